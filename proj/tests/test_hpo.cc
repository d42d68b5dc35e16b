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
#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <vector>

#include "leurn/data.h"
#include "leurn/error.h"
#include "leurn/hpo.h"

namespace leurn {
namespace {

SearchSpec small_spec() {
  SearchSpec s;
  s.depths = {0, 1, 2};
  s.regions = {2, 5};
  s.dropouts = {0.0, 0.5};
  s.trainings_per_config = 2;
  s.final_runs = 3;
  s.seed = 9;
  return s;
}

TEST(Spec, NormalizeSortsAndMapsSingleLevel) {
  SearchSpec s;
  s.depths = {2, 0, 2};
  s.regions = {10, 1, 2};
  s.dropouts = {0.5, 0.0};
  set_warnings_enabled(false);
  s.normalize();
  set_warnings_enabled(true);
  EXPECT_EQ(s.depths, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(s.regions, (std::vector<std::size_t>{2, 10}));
  EXPECT_EQ(s.dropouts, (std::vector<double>{0.0, 0.5}));
}

TEST(Spec, ValidateRejectsBadGrids) {
  SearchSpec s;
  s.depths = {};
  EXPECT_THROW(s.validate(), Error);
  s = SearchSpec{};
  s.depths = {2, 1};
  EXPECT_THROW(s.validate(), Error);
  s = SearchSpec{};
  s.dropouts = {0.0, 1.0};
  EXPECT_THROW(s.validate(), Error);
  s = SearchSpec{};
  s.trainings_per_config = 0;
  EXPECT_THROW(s.validate(), Error);
  EXPECT_NO_THROW(SearchSpec{}.validate());
}

TEST(Search, SingleEntryGrids) {
  SearchSpec s;
  s.depths = {1};
  s.regions = {5};
  s.dropouts = {0.1};
  int calls = 0;
  const SearchResult r = search(s, MetricKind::kAuroc, [&](const Hyper&, std::uint64_t) {
    ++calls;
    return 0.8;
  });
  EXPECT_EQ(calls, 15);
  EXPECT_EQ(r.best, (Hyper{1, 5, 0.1}));
  EXPECT_EQ(r.trajectory.size(), 15u);
}

TEST(Search, MonotoneInDepthPicksLargest) {
  const SearchSpec s = SearchSpec{};
  const SearchResult r = search(s, MetricKind::kAccuracy, [](const Hyper& h, std::uint64_t) {
    return 0.5 + 0.01 * static_cast<double>(h.depth);
  });
  EXPECT_EQ(r.best.depth, 10u);
  // Flat in k and r: the first value of each later phase is kept.
  EXPECT_EQ(r.best.regions, 2u);
  EXPECT_EQ(r.best.dropout, 0.9);
}

TEST(Search, PhasesFollowTheStopRule) {
  // Peak at d=2, k=5, r=0.3.
  auto score = [](const Hyper& h, std::uint64_t) {
    const double d = static_cast<double>(h.depth);
    const double k = static_cast<double>(h.regions);
    return 1.0 - std::abs(d - 2.0) * 0.1 - std::abs(k - 5.0) * 0.01 -
           std::abs(h.dropout - 0.3);
  };
  const SearchResult r = search(SearchSpec{}, MetricKind::kAuroc, score);
  EXPECT_EQ(r.best, (Hyper{2, 5, 0.3}));
  // d: 0,1,2,5 then k: 2,5,10 then r: 0.9,0.7,0.5,0.3,0.1.
  EXPECT_EQ(r.configs.size(), 12u);
  EXPECT_LE(r.configs.size(), 5u + 3u + 6u);
  EXPECT_EQ(r.configs[0].config, (Hyper{0, 2, 0.9}));
  EXPECT_EQ(r.configs[4].config, (Hyper{2, 2, 0.9}));
  EXPECT_EQ(r.configs[7].config, (Hyper{2, 5, 0.9}));
  EXPECT_EQ(r.configs[11].config, (Hyper{2, 5, 0.1}));
}

TEST(Search, TieStops) {
  const SearchResult r = search(SearchSpec{}, MetricKind::kAuroc,
                                [](const Hyper&, std::uint64_t) { return 0.7; });
  EXPECT_EQ(r.best, (Hyper{0, 2, 0.9}));
  // Each phase evaluates two configs.
  EXPECT_EQ(r.configs.size(), 6u);
}

TEST(Search, RmseIsMinimized) {
  const SearchResult r = search(SearchSpec{}, MetricKind::kRmse,
                                [](const Hyper& h, std::uint64_t) {
                                  return 1.0 + 0.1 * static_cast<double>(h.depth);
                                });
  EXPECT_EQ(r.best.depth, 0u);
}

TEST(Search, FailedTrialsRecordWorstMetric) {
  SearchSpec s = small_spec();
  const SearchResult r =
      search(s, MetricKind::kAuroc, [](const Hyper& h, std::uint64_t) -> double {
        if (h.depth == 1) throw Error(ErrorCode::kDivergence, "diverged at epoch 3");
        if (h.depth == 2) return std::nan("");
        return 0.6;
      });
  bool saw_failure = false;
  for (const auto& t : r.trajectory) {
    if (t.config.depth == 1) {
      EXPECT_TRUE(t.failed);
      EXPECT_EQ(t.metric, worst_metric(MetricKind::kAuroc));
      EXPECT_NE(t.error.find("epoch 3"), std::string::npos);
      saw_failure = true;
    }
  }
  EXPECT_TRUE(saw_failure);
  EXPECT_EQ(r.best.depth, 0u);
}

TEST(Search, AggregatesRecomputableAndDeterministic) {
  auto noisy = [](const Hyper& h, std::uint64_t seed) {
    return 0.5 + 0.1 * static_cast<double>(h.depth) +
           static_cast<double>(seed % 1000) * 1e-5;
  };
  const SearchResult a = search(small_spec(), MetricKind::kAuroc, noisy);
  const SearchResult b = search(small_spec(), MetricKind::kAuroc, noisy);
  EXPECT_EQ(a.log_jsonl(), b.log_jsonl());
  std::size_t t = 0;
  for (const auto& c : a.configs) {
    std::vector<double> runs;
    for (std::size_t i = 0; i < c.metrics.size(); ++i) runs.push_back(a.trajectory[t++].metric);
    EXPECT_EQ(runs, c.metrics);
    EXPECT_EQ(mean_of(runs), c.mean);
  }
  bool best_seen = false;
  for (const auto& c : a.configs) best_seen = best_seen || c.config == a.best;
  EXPECT_TRUE(best_seen);
}

TEST(Search, SeedsAreDistinct) {
  std::vector<std::uint64_t> seeds;
  search(small_spec(), MetricKind::kAuroc, [&](const Hyper&, std::uint64_t s) {
    seeds.push_back(s);
    return 0.5;
  });
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::unique(seeds.begin(), seeds.end()), seeds.end());
}

TEST(Search, LogRecords) {
  const SearchResult r =
      search(small_spec(), MetricKind::kAuroc, [](const Hyper&, std::uint64_t) { return 0.5; });
  std::istringstream in(r.log_jsonl());
  std::string line;
  std::map<std::string, int> kinds;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["format_version"], 1);
    ++kinds[j["record"].get<std::string>()];
  }
  EXPECT_EQ(kinds["trial"], static_cast<int>(r.trajectory.size()));
  EXPECT_EQ(kinds["config"], static_cast<int>(r.configs.size()));
  EXPECT_EQ(kinds["best"], 1);
}

TEST(Stats, MeanAndPopulationStd) {
  EXPECT_DOUBLE_EQ(mean_of({1.0, 2.0, 3.0}), 2.0);
  EXPECT_DOUBLE_EQ(population_std({1.0, 3.0}), 1.0);
  EXPECT_EQ(population_std({0.7}), 0.0);
  EXPECT_THROW(mean_of({}), Error);
}

class HalfMoonTable : public ::testing::Test {
 protected:
  void SetUp() override {
    set_warnings_enabled(false);
    const LabeledData d = half_moon({.n = 1500, .noise = 0.1, .seed = 3});
    std::ostringstream csv;
    csv << "x,y,label\n";
    for (std::size_t i = 0; i < d.y.size(); ++i) {
      csv << format_double(d.x(i, 0)) << ',' << format_double(d.x(i, 1)) << ','
          << d.y[i] << '\n';
    }
    std::istringstream in(csv.str());
    loaded = parse_csv(in, "label");
  }
  void TearDown() override { set_warnings_enabled(true); }
  LoadedTable loaded;
};

TEST_F(HalfMoonTable, FinalProtocolSingleRun) {
  TrainConfig t;
  t.max_epochs = 20;
  t.patience = 5;
  const TableExperiment ex(loaded.table, loaded.schema, t, SplitRatios{}, 1);
  const FinalResult r = ex.final_protocol(Hyper{1, 2, 0.0}, 1, 5);
  ASSERT_EQ(r.test_metrics.size(), 1u);
  EXPECT_EQ(r.stddev, 0.0);
  EXPECT_EQ(r.mean, r.test_metrics[0]);
  const FinalResult again = ex.final_protocol(Hyper{1, 2, 0.0}, 1, 5);
  EXPECT_EQ(again.mean, r.mean);
  EXPECT_EQ(again.models[0], r.models[0]);
  EXPECT_THROW(ex.final_protocol(Hyper{1, 2, 0.0}, 0, 5), Error);
}

TEST_F(HalfMoonTable, SearchSelectsAccurateConfig) {
  const TableExperiment ex(loaded.table, loaded.schema, TrainConfig{}, SplitRatios{}, 2);
  SearchSpec s;
  s.depths = {0, 2, 5};
  s.regions = {2, 10};
  s.dropouts = {0.0, 0.3};
  s.trainings_per_config = 3;
  s.seed = 9;
  const SearchResult r = search(s, ex.metric(), ex.trial_fn());
  EXPECT_EQ(r.metric, MetricKind::kAuroc);
  EXPECT_GE(r.best_mean, 0.98);
}

}  // namespace
}  // namespace leurn
