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
#include "leurn/hpo.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "leurn/error.h"

namespace leurn {
namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

nlohmann::json hyper_json(const Hyper& h) {
  return {{"d", h.depth}, {"k", h.regions}, {"r", h.dropout}};
}

nlohmann::json metric_json(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

void SearchSpec::normalize() {
  for (auto& k : regions) {
    if (k == 1) {
      warn("k = 1 in the search grid is mapped to 2");
      k = 2;
    }
  }
  sort_unique(depths);
  sort_unique(regions);
  sort_unique(dropouts);
  validate();
}

void SearchSpec::validate() const {
  if (depths.empty() || regions.empty() || dropouts.empty()) {
    throw Error(ErrorCode::kConfig, "search grids must be non-empty");
  }
  if (!std::is_sorted(depths.begin(), depths.end()) ||
      !std::is_sorted(regions.begin(), regions.end()) ||
      !std::is_sorted(dropouts.begin(), dropouts.end())) {
    throw Error(ErrorCode::kConfig, "search grids must be sorted");
  }
  if (regions.front() < 2) throw Error(ErrorCode::kConfig, "k grid values must be >= 2");
  if (dropouts.front() < 0.0 || dropouts.back() >= 1.0) {
    throw Error(ErrorCode::kConfig, "dropout grid values must lie in [0, 1)");
  }
  if (trainings_per_config < 1 || final_runs < 1) {
    throw Error(ErrorCode::kConfig, "training counts must be >= 1");
  }
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) throw Error(ErrorCode::kInvalidArgument, "mean of empty list");
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double population_std(const std::vector<double>& v) {
  const double m = mean_of(v);
  double sum = 0.0;
  for (double x : v) sum += (x - m) * (x - m);
  return std::sqrt(sum / static_cast<double>(v.size()));
}

SearchResult search(const SearchSpec& spec, MetricKind metric,
                    const TrialFn& trial) {
  spec.validate();
  SearchResult result;
  result.metric = metric;
  std::uint64_t counter = 0;

  auto evaluate = [&](int phase, const Hyper& h) {
    ConfigSummary summary;
    summary.phase = phase;
    summary.config = h;
    for (std::size_t run = 0; run < spec.trainings_per_config; ++run) {
      TrialRecord rec;
      rec.phase = phase;
      rec.config = h;
      rec.run = run;
      rec.seed = mix_seed(spec.seed, counter++);
      try {
        rec.metric = trial(h, rec.seed);
        if (!std::isfinite(rec.metric)) {
          throw Error(ErrorCode::kDivergence, "non-finite trial metric");
        }
      } catch (const Error& e) {
        rec.failed = true;
        rec.error = e.what();
        rec.metric = worst_metric(metric);
      }
      summary.metrics.push_back(rec.metric);
      result.trajectory.push_back(std::move(rec));
    }
    summary.mean = mean_of(summary.metrics);
    result.configs.push_back(summary);
    return summary.mean;
  };

  // Walks `grid`, keeping the incumbent until a candidate fails to improve.
  auto phase = [&](int id, Hyper base, auto grid, auto assign) {
    Hyper best = base;
    double best_mean = 0.0;
    bool first = true;
    for (const auto& value : grid) {
      Hyper h = base;
      assign(h, value);
      const double m = evaluate(id, h);
      if (first || metric_better(metric, m, best_mean)) {
        best = h;
        best_mean = m;
        first = false;
      } else {
        break;
      }
    }
    result.best_mean = best_mean;
    return best;
  };

  Hyper h{spec.depths.front(), spec.regions.front(), spec.dropouts.back()};
  h = phase(1, h, spec.depths, [](Hyper& x, std::size_t v) { x.depth = v; });
  h = phase(2, h, spec.regions, [](Hyper& x, std::size_t v) { x.regions = v; });
  std::vector<double> descending(spec.dropouts.rbegin(), spec.dropouts.rend());
  h = phase(3, h, descending, [](Hyper& x, double v) { x.dropout = v; });
  result.best = h;
  return result;
}

std::string SearchResult::log_jsonl() const {
  std::string out;
  const std::string metric_label(metric_name(metric));
  for (const auto& t : trajectory) {
    nlohmann::json j{{"format_version", 1},
                     {"record", "trial"},
                     {"phase", t.phase},
                     {"config", hyper_json(t.config)},
                     {"run", t.run},
                     {"seed", t.seed},
                     {"metric", metric_label},
                     {"value", metric_json(t.metric)},
                     {"failed", t.failed}};
    if (t.failed) j["error"] = t.error;
    out += j.dump() + "\n";
  }
  for (const auto& c : configs) {
    nlohmann::json values = nlohmann::json::array();
    for (double v : c.metrics) values.push_back(metric_json(v));
    out += nlohmann::json{{"format_version", 1},
                          {"record", "config"},
                          {"phase", c.phase},
                          {"config", hyper_json(c.config)},
                          {"values", values},
                          {"mean", metric_json(c.mean)}}
               .dump() +
           "\n";
  }
  out += nlohmann::json{{"format_version", 1},
                        {"record", "best"},
                        {"config", hyper_json(best)},
                        {"mean", metric_json(best_mean)}}
             .dump() +
         "\n";
  if (final) {
    nlohmann::json values = nlohmann::json::array();
    for (double v : final->test_metrics) values.push_back(metric_json(v));
    out += nlohmann::json{{"format_version", 1},
                          {"record", "final"},
                          {"config", hyper_json(final->config)},
                          {"seeds", final->seeds},
                          {"metric", metric_label},
                          {"test_values", values},
                          {"mean", metric_json(final->mean)},
                          {"std", metric_json(final->stddev)}}
               .dump() +
           "\n";
  }
  return out;
}

TableExperiment::TableExperiment(RawTable table, Schema schema,
                                 TrainConfig train, SplitRatios ratios,
                                 std::uint64_t seed)
    : table_(std::move(table)),
      schema_(std::move(schema)),
      train_(train),
      ratios_(ratios) {
  train_.validate();
  labels_ = stratification_labels(table_, schema_);
  const auto tags = split(table_.rows.size(), ratios_, seed, labels_);
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] != SplitTag::kTest) pool_.push_back(i);
  }
}

LeurnConfig TableExperiment::model_config(const Hyper& h, std::size_t n_features,
                                          std::uint64_t seed) const {
  return make_config(n_features, h.depth, h.regions, h.dropout, schema_.task,
                     schema_.num_classes(), seed);
}

double TableExperiment::trial(const Hyper& config, std::uint64_t seed) const {
  const double kept = ratios_.train + ratios_.val;
  const SplitRatios inner{ratios_.train / kept, ratios_.val / kept, 0.0};
  std::vector<double> pool_labels;
  if (!labels_.empty()) {
    for (std::size_t i : pool_) pool_labels.push_back(labels_[i]);
  }
  const auto inner_tags = split(pool_.size(), inner, mix_seed(seed, 1), pool_labels);
  std::vector<SplitTag> tags(table_.rows.size(), SplitTag::kTest);
  for (std::size_t i = 0; i < pool_.size(); ++i) tags[pool_[i]] = inner_tags[i];
  const PreparedSplits prepared = fit_transform(table_, schema_, tags);
  const LeurnConfig cfg =
      model_config(config, prepared.preprocessor.n_features(), mix_seed(seed, 2));
  TrainConfig tc = train_;
  tc.seed = mix_seed(seed, 3);
  return fit(cfg, tc, prepared.train, prepared.val).report.best_metric;
}

TrialFn TableExperiment::trial_fn() const {
  return [this](const Hyper& h, std::uint64_t seed) { return trial(h, seed); };
}

FinalResult TableExperiment::final_protocol(const Hyper& config,
                                            std::size_t runs,
                                            std::uint64_t seed) const {
  if (runs < 1) throw Error(ErrorCode::kConfig, "final protocol needs runs >= 1");
  FinalResult out;
  out.config = config;
  for (std::size_t run = 0; run < runs; ++run) {
    const std::uint64_t s = mix_seed(seed, run);
    const auto tags = split(table_.rows.size(), ratios_, mix_seed(s, 1), labels_);
    const PreparedSplits prepared = fit_transform(table_, schema_, tags);
    const LeurnConfig cfg =
        model_config(config, prepared.preprocessor.n_features(), mix_seed(s, 2));
    TrainConfig tc = train_;
    tc.seed = mix_seed(s, 3);
    FitResult fitted = fit(cfg, tc, prepared.train, prepared.val);
    out.seeds.push_back(s);
    out.test_metrics.push_back(evaluate(fitted.params, cfg, prepared.test));
    out.models.push_back(std::move(fitted.params));
  }
  out.mean = mean_of(out.test_metrics);
  out.stddev = population_std(out.test_metrics);
  return out;
}

}  // namespace leurn
