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
#include "leurn/task.h"

#include <limits>
#include <string>

#include "leurn/error.h"

namespace leurn {

std::string_view task_name(TaskKind task) {
  switch (task) {
    case TaskKind::kBinary: return "binary";
    case TaskKind::kMulticlass: return "multiclass";
    case TaskKind::kRegression: return "regression";
  }
  return "binary";
}

TaskKind parse_task(std::string_view name) {
  if (name == "binary") return TaskKind::kBinary;
  if (name == "multiclass") return TaskKind::kMulticlass;
  if (name == "regression") return TaskKind::kRegression;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown task '" + std::string(name) + "'");
}

MetricKind metric_for(TaskKind task) {
  switch (task) {
    case TaskKind::kBinary: return MetricKind::kAuroc;
    case TaskKind::kMulticlass: return MetricKind::kAccuracy;
    case TaskKind::kRegression: return MetricKind::kRmse;
  }
  return MetricKind::kAuroc;
}

std::string_view metric_name(MetricKind metric) {
  switch (metric) {
    case MetricKind::kAuroc: return "auroc";
    case MetricKind::kAccuracy: return "accuracy";
    case MetricKind::kRmse: return "rmse";
  }
  return "auroc";
}

bool higher_is_better(MetricKind metric) { return metric != MetricKind::kRmse; }

bool metric_better(MetricKind metric, double candidate, double incumbent) {
  return higher_is_better(metric) ? candidate > incumbent
                                  : candidate < incumbent;
}

double worst_metric(MetricKind metric) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  return higher_is_better(metric) ? -kInf : kInf;
}

}  // namespace leurn
