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
#ifndef LEURN_TRAIN_H_
#define LEURN_TRAIN_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "leurn/data.h"
#include "leurn/model.h"
#include "leurn/numeric.h"
#include "leurn/task.h"

namespace leurn {

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> grad_logits;
};

// Binary: sigmoid cross-entropy. Multiclass: softmax cross-entropy.
// Regression: squared error. `target` is 0/1, a class index, or a value.
LossAndGrad loss_and_grad(TaskKind task, std::span<const double> logits,
                          double target);

// Loss only, written into `grad` to avoid allocation in the training loop.
double loss_and_grad_into(TaskKind task, std::span<const double> logits,
                          double target, std::span<double> grad);

// Probability that a random positive outscores a random negative, ties
// counted one half.
double auroc(std::span<const double> scores, std::span<const double> labels);
double accuracy(std::span<const double> predictions,
                std::span<const double> labels);
double rmse(std::span<const double> predictions,
            std::span<const double> targets);

// Task metric of `params` on `data`: AUROC, accuracy or RMSE.
double evaluate(const LeurnParams& params, const LeurnConfig& cfg,
                const Dataset& data);

struct TrainConfig {
  double learning_rate = 1e-3;
  std::size_t batch_size = 128;
  std::size_t max_epochs = 300;
  std::size_t patience = 30;
  std::uint64_t seed = 0;

  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double val_metric = 0.0;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainReport {
  MetricKind metric = MetricKind::kAuroc;
  std::vector<EpochRecord> history;
  std::optional<std::size_t> best_epoch;
  double best_metric = 0.0;
  double wall_seconds = 0.0;

  // Equality ignoring wall time.
  bool same_result(const TrainReport& other) const;
};

struct FitResult {
  LeurnParams params;
  TrainReport report;
};

// Mini-batch Adam with per-epoch validation; returns the parameters of the
// best validation epoch. Stops after `patience` epochs without improvement.
FitResult fit(const LeurnConfig& cfg, const TrainConfig& tcfg,
              const Dataset& train, const Dataset& val);

}  // namespace leurn

#endif  // LEURN_TRAIN_H_
