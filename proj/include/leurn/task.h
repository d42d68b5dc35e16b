/*
 * Copyright 2026 The LEURN Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef LEURN_TASK_H_
#define LEURN_TASK_H_

#include <cstddef>
#include <string_view>

namespace leurn {

enum class TaskKind { kBinary, kMulticlass, kRegression };

std::string_view task_name(TaskKind task);
TaskKind parse_task(std::string_view name);

// Validation metric tied to each task: AUROC, accuracy, RMSE.
enum class MetricKind { kAuroc, kAccuracy, kRmse };

MetricKind metric_for(TaskKind task);
std::string_view metric_name(MetricKind metric);
bool higher_is_better(MetricKind metric);
// Strict improvement of `candidate` over `incumbent`.
bool metric_better(MetricKind metric, double candidate, double incumbent);
// Sentinel standing in for a failed evaluation.
double worst_metric(MetricKind metric);

}  // namespace leurn

#endif  // LEURN_TASK_H_
