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
#include "leurn/train.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "leurn/error.h"

namespace leurn {

double loss_and_grad_into(TaskKind task, std::span<const double> logits,
                          double target, std::span<double> grad) {
  switch (task) {
    case TaskKind::kBinary: {
      if (logits.size() != 1 || grad.size() != 1) {
        throw Error(ErrorCode::kShapeMismatch, "binary loss needs one logit");
      }
      if (target != 0.0 && target != 1.0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "binary target must be 0 or 1");
      }
      const double z = logits[0];
      grad[0] = 1.0 / (1.0 + std::exp(-z)) - target;
      return std::max(z, 0.0) - z * target + std::log1p(std::exp(-std::abs(z)));
    }
    case TaskKind::kMulticlass: {
      const std::size_t c = logits.size();
      if (grad.size() != c || c < 2) {
        throw Error(ErrorCode::kShapeMismatch, "multiclass loss: bad shapes");
      }
      const double idx = std::floor(target);
      if (idx != target || target < 0.0 || target >= static_cast<double>(c)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "multiclass target must be a class index < " +
                        std::to_string(c));
      }
      const auto y = static_cast<std::size_t>(target);
      const double mx = *std::max_element(logits.begin(), logits.end());
      double sum = 0.0;
      for (std::size_t i = 0; i < c; ++i) {
        grad[i] = std::exp(logits[i] - mx);
        sum += grad[i];
      }
      for (std::size_t i = 0; i < c; ++i) grad[i] /= sum;
      grad[y] -= 1.0;
      return mx + std::log(sum) - logits[y];
    }
    case TaskKind::kRegression: {
      if (logits.size() != 1 || grad.size() != 1) {
        throw Error(ErrorCode::kShapeMismatch,
                    "regression loss needs one output");
      }
      if (!std::isfinite(target)) {
        throw Error(ErrorCode::kInvalidArgument, "non-finite target");
      }
      const double r = logits[0] - target;
      grad[0] = 2.0 * r;
      return r * r;
    }
  }
  return 0.0;
}

LossAndGrad loss_and_grad(TaskKind task, std::span<const double> logits,
                          double target) {
  LossAndGrad out;
  out.grad_logits.resize(logits.size());
  out.loss = loss_and_grad_into(task, logits, target, out.grad_logits);
  return out;
}

double auroc(std::span<const double> scores, std::span<const double> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::kShapeMismatch, "auroc: length mismatch");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  // Mann-Whitney U with mid-ranks for ties.
  double positives = 0.0;
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double mid_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) {
      const double y = labels[order[t]];
      if (y != 0.0 && y != 1.0) {
        throw Error(ErrorCode::kInvalidArgument, "auroc: labels must be 0/1");
      }
      if (y == 1.0) {
        positives += 1.0;
        rank_sum += mid_rank;
      }
    }
    i = j + 1;
  }
  const double negatives = static_cast<double>(n) - positives;
  if (positives == 0.0 || negatives == 0.0) {
    throw Error(ErrorCode::kData, "auroc: both classes must be present");
  }
  return (rank_sum - positives * (positives + 1.0) / 2.0) /
         (positives * negatives);
}

double accuracy(std::span<const double> predictions,
                std::span<const double> labels) {
  if (predictions.size() != labels.size()) {
    throw Error(ErrorCode::kShapeMismatch, "accuracy: length mismatch");
  }
  if (predictions.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "accuracy: empty input");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i] == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double rmse(std::span<const double> predictions,
            std::span<const double> targets) {
  if (predictions.size() != targets.size()) {
    throw Error(ErrorCode::kShapeMismatch, "rmse: length mismatch");
  }
  if (predictions.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "rmse: empty input");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double r = predictions[i] - targets[i];
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(targets.size()));
}

double evaluate(const LeurnParams& params, const LeurnConfig& cfg,
                const Dataset& data) {
  if (data.rows() == 0) throw Error(ErrorCode::kData, "evaluate: empty dataset");
  ForwardTrace trace;
  std::vector<double> outputs(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    forward_into(params, cfg, data.row(i), {}, trace);
    if (cfg.task == TaskKind::kMulticlass) {
      outputs[i] = static_cast<double>(
          std::max_element(trace.logits.begin(), trace.logits.end()) -
          trace.logits.begin());
    } else {
      outputs[i] = trace.logits[0];
    }
  }
  switch (metric_for(cfg.task)) {
    case MetricKind::kAuroc: return auroc(outputs, data.targets);
    case MetricKind::kAccuracy: return accuracy(outputs, data.targets);
    case MetricKind::kRmse: return rmse(outputs, data.targets);
  }
  return 0.0;
}

void TrainConfig::validate() const {
  if (batch_size < 1) throw Error(ErrorCode::kConfig, "batch size must be >= 1");
  if (patience > max_epochs) {
    throw Error(ErrorCode::kConfig, "patience must not exceed max epochs");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::kConfig, "learning rate must be positive");
  }
}

bool TrainReport::same_result(const TrainReport& other) const {
  return metric == other.metric && history == other.history &&
         best_epoch == other.best_epoch && best_metric == other.best_metric;
}

FitResult fit(const LeurnConfig& cfg, const TrainConfig& tcfg,
              const Dataset& train, const Dataset& val) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  tcfg.validate();
  if (train.rows() == 0) throw Error(ErrorCode::kData, "fit: empty train split");
  if (val.rows() == 0) throw Error(ErrorCode::kData, "fit: empty validation split");
  if (train.n_features() != cfg.n_features || val.n_features() != cfg.n_features) {
    throw Error(ErrorCode::kShapeMismatch,
                "fit: dataset width does not match n_features");
  }
  if (train.output_dim() != cfg.output_dim) {
    throw Error(ErrorCode::kShapeMismatch,
                "fit: dataset output dimension does not match config");
  }

  Rng init_rng(cfg.seed);
  Rng run_rng(tcfg.seed);

  FitResult result;
  result.params = LeurnParams::initialize(cfg, init_rng);
  result.report.metric = metric_for(cfg.task);

  LeurnParams params = result.params;
  LeurnGradients grads = LeurnParams::zeros(cfg);
  const std::size_t count = params.parameter_count();
  std::vector<double> flat_params(count);
  std::vector<double> flat_grads(count);
  AdamOptions adam_options;
  adam_options.learning_rate = tcfg.learning_rate;
  AdamState adam(count, adam_options);

  ForwardTrace trace;
  BackwardWorkspace ws;
  std::vector<double> grad_logits(cfg.output_dim);
  ForwardOptions train_options{Mode::kTrain, Activation::kQuantized, &run_rng};

  std::vector<std::size_t> order(train.rows());
  std::iota(order.begin(), order.end(), 0);

  if (tcfg.max_epochs == 0) {
    result.report.best_metric = evaluate(result.params, cfg, val);
  }

  std::size_t since_best = 0;
  for (std::size_t epoch = 0; epoch < tcfg.max_epochs; ++epoch) {
    run_rng.shuffle(order);
    double total_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += tcfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + tcfg.batch_size);
      grads.set_zero();
      for (std::size_t b = start; b < stop; ++b) {
        const std::size_t r = order[b];
        forward_into(params, cfg, train.row(r), train_options, trace);
        total_loss += loss_and_grad_into(cfg.task, trace.logits,
                                         train.targets[r], grad_logits);
        backward_accumulate(trace, params, cfg, grad_logits, grads, ws);
      }
      const double scale = 1.0 / static_cast<double>(stop - start);
      grads.flatten_into(flat_grads);
      for (double& g : flat_grads) g *= scale;
      params.flatten_into(flat_params);
      adam_step(flat_params, flat_grads, adam);
      params.unflatten(flat_params);
    }
    const double mean_loss = total_loss / static_cast<double>(order.size());
    if (!std::isfinite(mean_loss) || !all_finite(flat_params)) {
      throw Error(ErrorCode::kDivergence,
                  "training diverged at epoch " + std::to_string(epoch));
    }
    const double metric = evaluate(params, cfg, val);
    if (!std::isfinite(metric)) {
      throw Error(ErrorCode::kDivergence,
                  "non-finite validation metric at epoch " +
                      std::to_string(epoch));
    }
    result.report.history.push_back({epoch, mean_loss, metric});
    if (!result.report.best_epoch ||
        metric_better(result.report.metric, metric, result.report.best_metric)) {
      result.report.best_epoch = epoch;
      result.report.best_metric = metric;
      result.params = params;
      since_best = 0;
    } else if (++since_best >= tcfg.patience) {
      break;
    }
  }
  result.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return result;
}

}  // namespace leurn
