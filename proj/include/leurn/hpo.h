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
#ifndef LEURN_HPO_H_
#define LEURN_HPO_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "leurn/data.h"
#include "leurn/model.h"
#include "leurn/task.h"
#include "leurn/train.h"

namespace leurn {

struct Hyper {
  std::size_t depth = 0;
  std::size_t regions = 2;
  double dropout = 0.0;

  friend bool operator==(const Hyper&, const Hyper&) = default;
};

struct SearchSpec {
  std::vector<std::size_t> depths{0, 1, 2, 5, 10};
  std::vector<std::size_t> regions{2, 5, 10};
  std::vector<double> dropouts{0.0, 0.1, 0.3, 0.5, 0.7, 0.9};
  std::size_t trainings_per_config = 5;
  std::size_t final_runs = 20;
  std::uint64_t seed = 0;

  // Sorts and de-duplicates the grids, maps k = 1 to 2, then checks them.
  void normalize();
  void validate() const;
};

struct TrialRecord {
  // 1: depth, 2: regions, 3: dropout.
  int phase = 0;
  Hyper config;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double metric = 0.0;
  bool failed = false;
  std::string error;
};

struct ConfigSummary {
  int phase = 0;
  Hyper config;
  std::vector<double> metrics;
  double mean = 0.0;
};

struct FinalResult {
  Hyper config;
  std::vector<std::uint64_t> seeds;
  std::vector<double> test_metrics;
  double mean = 0.0;
  // Population standard deviation.
  double stddev = 0.0;
  std::vector<LeurnParams> models;
};

struct SearchResult {
  MetricKind metric = MetricKind::kAuroc;
  Hyper best;
  double best_mean = 0.0;
  std::vector<ConfigSummary> configs;
  std::vector<TrialRecord> trajectory;
  std::optional<FinalResult> final;

  // One JSON object per trial, then one per config, then the final result.
  std::string log_jsonl() const;
};

// Returns the best validation metric of one training of `config`. Thrown
// leurn::Error marks the trial failed.
using TrialFn = std::function<double(const Hyper& config, std::uint64_t seed)>;

// Depth, then regions, then dropout (descending). Each phase stops at the
// first config whose mean does not strictly beat the incumbent.
SearchResult search(const SearchSpec& spec, MetricKind metric,
                    const TrialFn& trial);

double mean_of(const std::vector<double>& v);
double population_std(const std::vector<double>& v);

// Train/val/test experiments on one raw table. Preprocessing is refitted on
// every training split.
class TableExperiment {
 public:
  // The test rows are fixed by `seed` and excluded from every trial.
  TableExperiment(RawTable table, Schema schema, TrainConfig train,
                  SplitRatios ratios, std::uint64_t seed);

  MetricKind metric() const { return metric_for(schema_.task); }
  // Fresh train/val split of the non-test rows, fit, best val metric.
  double trial(const Hyper& config, std::uint64_t seed) const;
  TrialFn trial_fn() const;

  // Per run: fresh train/val/test split, fit, test metric.
  FinalResult final_protocol(const Hyper& config, std::size_t runs,
                             std::uint64_t seed) const;

 private:
  LeurnConfig model_config(const Hyper& h, std::size_t n_features,
                           std::uint64_t seed) const;

  RawTable table_;
  Schema schema_;
  TrainConfig train_;
  SplitRatios ratios_;
  std::vector<std::size_t> pool_;
  std::vector<double> labels_;
};

}  // namespace leurn

#endif  // LEURN_HPO_H_
