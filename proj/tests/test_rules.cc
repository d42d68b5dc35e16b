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
#include <limits>
#include <sstream>
#include <vector>

#include "leurn/data.h"
#include "leurn/error.h"
#include "leurn/rules.h"
#include "test_util.h"

namespace leurn {
namespace {

using testing::random_params;
using testing::random_point;

constexpr double kInf = std::numeric_limits<double>::infinity();

RuleTraceEntry entry(std::size_t layer, std::size_t feature, double lo, double hi) {
  RuleTraceEntry e;
  e.layer = layer;
  e.feature = feature;
  e.bounds = {lo, hi};
  return e;
}

// Uniform draw inside a region, with unbounded sides limited to +-4.
std::vector<double> inside(const Region& r, Rng& rng) {
  std::vector<double> x(r.standardized.size());
  for (std::size_t f = 0; f < x.size(); ++f) {
    const double lo = std::max(r.standardized[f].lower, -4.0);
    const double hi = std::min(r.standardized[f].upper, 4.0);
    x[f] = rng.uniform(lo, hi);
  }
  return x;
}

TEST(Extract, TinyModelSingleThreshold) {
  const Extraction ex = extract_region(testing::tiny_params(), testing::tiny_config(),
                                       std::vector<double>{0.5});
  ASSERT_EQ(ex.region.standardized.size(), 1u);
  EXPECT_DOUBLE_EQ(ex.region.standardized[0].lower, -0.3);
  EXPECT_EQ(ex.region.standardized[0].upper, kInf);
  ASSERT_EQ(ex.trace.size(), 1u);
  EXPECT_EQ(ex.trace[0].bin, 1u);
  EXPECT_FALSE(ex.trace[0].redundant);
}

TEST(Extract, LaterThresholdOutsideIsRedundant) {
  // d=1, k=2: tau0 = 0 puts the layer-0 split at 0; tau1 = -1 splits at 1,
  // which a point at -0.5 never reaches.
  const LeurnConfig cfg = make_config(1, 1, 2, 0.0, TaskKind::kBinary);
  LeurnParams p = LeurnParams::zeros(cfg);
  p.tau0 = {0.0};
  p.rule_layers[0].bias = {-1.0};
  const Extraction ex = extract_region(p, cfg, std::vector<double>{-0.5});
  ASSERT_EQ(ex.trace.size(), 2u);
  EXPECT_FALSE(ex.trace[0].redundant);
  EXPECT_TRUE(ex.trace[1].redundant);
  EXPECT_EQ(ex.trace[1].absorbed_by, std::optional<std::size_t>(0));
  EXPECT_EQ(ex.region.standardized[0], (Interval{-kInf, 0.0}));
}

TEST(Extract, PointLiesInsideItsRegion) {
  const LeurnConfig cfg = make_config(3, 2, 5, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 17);
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_point(3, rng);
    EXPECT_TRUE(extract_region(p, cfg, x).region.contains(x));
  }
}

TEST(Extract, MonteCarloConstancy) {
  const LeurnConfig cfg = make_config(3, 2, 5, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 23);
  Rng rng(2);
  for (int probe = 0; probe < 5; ++probe) {
    const auto x = random_point(3, rng);
    const Extraction ex = extract_region(p, cfg, x);
    const ForwardTrace ref = forward(p, cfg, x);
    for (int i = 0; i < 1000; ++i) {
      const auto z = inside(ex.region, rng);
      const ForwardTrace t = forward(p, cfg, z);
      ASSERT_EQ(t.logits, ref.logits);
      ASSERT_EQ(t.embedding, ref.embedding);
    }
  }
}

TEST(Extract, RefinementNeverWidens) {
  const LeurnConfig cfg = make_config(3, 3, 5, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 4);
  Rng rng(3);
  const auto x = random_point(3, rng);
  const Extraction ex = extract_region(p, cfg, x);
  std::vector<Interval> running(3, Interval{-kInf, kInf});
  for (const RuleTraceEntry& e : ex.trace) {
    Interval& r = running[e.feature];
    const Interval before = r;
    r.lower = std::max(r.lower, e.bounds.lower);
    r.upper = std::min(r.upper, e.bounds.upper);
    EXPECT_GE(r.lower, before.lower);
    EXPECT_LE(r.upper, before.upper);
  }
  EXPECT_EQ(running, ex.region.standardized);
}

TEST(Extract, RawBoundsUseThePreprocessor) {
  const LabeledData d = half_moon({.n = 300, .noise = 0.1, .seed = 1});
  std::vector<std::size_t> rows(300);
  for (std::size_t i = 0; i < 300; ++i) rows[i] = i;
  const Preprocessor pre = Preprocessor::fit_matrix(d.x, rows, d.names);
  const LeurnConfig cfg = make_config(2, 1, 5, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 3);
  const std::vector<double> x{0.1, -0.4};
  const Region r = extract_region(p, cfg, x, &pre).region;
  for (std::size_t f = 0; f < 2; ++f) {
    const auto& fe = pre.features()[f];
    if (std::isfinite(r.standardized[f].lower)) {
      EXPECT_NEAR(r.raw[f].lower, fe.mean + fe.stddev * r.standardized[f].lower, 1e-12);
    }
    if (std::isfinite(r.standardized[f].upper)) {
      EXPECT_NEAR(r.raw[f].upper, fe.mean + fe.stddev * r.standardized[f].upper, 1e-12);
    }
  }
}

TEST(Simplify, NoRedundancyIsIdentity) {
  const std::vector<RuleTraceEntry> trace{entry(0, 0, -1, 1), entry(1, 0, -0.5, 0.5),
                                          entry(0, 1, 0, kInf)};
  const SimplifiedTrace s = simplify(trace);
  EXPECT_EQ(s.kept, (std::vector<std::size_t>{0, 1, 2}));
  for (const auto& e : s.entries) EXPECT_FALSE(e.redundant);
}

TEST(Simplify, NestedIntervalIsAbsorbed) {
  const std::vector<RuleTraceEntry> trace{entry(0, 0, -1, 1), entry(1, 0, -2, 2)};
  const SimplifiedTrace s = simplify(trace);
  EXPECT_EQ(s.kept, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(s.entries[1].redundant);
  EXPECT_EQ(s.entries[1].absorbed_by, std::optional<std::size_t>(0));
}

TEST(Simplify, AbsorberIsTheCloserBound) {
  // Lower bound set by entry 0, upper by entry 1. Entry 2 is 0.1 below the
  // upper bound and 3 below the lower one.
  const std::vector<RuleTraceEntry> trace{entry(0, 0, 0, kInf), entry(1, 0, -kInf, 1),
                                          entry(2, 0, -3, 1.1)};
  const SimplifiedTrace s = simplify(trace);
  EXPECT_EQ(s.entries[2].absorbed_by, std::optional<std::size_t>(1));
}

TEST(Simplify, CategoryBiasAgainstDataBounds) {
  const std::vector<RuleTraceEntry> trace{entry(0, 0, -10, 10), entry(0, 1, 0, kInf)};
  const std::vector<Interval> data{{-2, 2}, {-2, 2}};
  const SimplifiedTrace s = simplify(trace, data);
  EXPECT_TRUE(s.entries[0].category_bias);
  EXPECT_FALSE(s.entries[1].category_bias);
  EXPECT_EQ(s.kept.size(), 2u);
}

TEST(Simplify, SoundOnRandomModels) {
  Rng rng(8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LeurnConfig cfg = make_config(3, 3, 5, 0.0, TaskKind::kBinary);
    const LeurnParams p = random_params(cfg, seed);
    const auto x = random_point(3, rng);
    const Extraction ex = extract_region(p, cfg, x);
    const SimplifiedTrace s = simplify(ex.trace);
    EXPECT_EQ(intervals_of(s, 3), ex.region.standardized);
  }
}

TEST(RegionOutput, EqualsPredictInsideRegion) {
  const LeurnConfig cfg = make_config(3, 2, 5, 0.0, TaskKind::kMulticlass, 3);
  const LeurnParams p = random_params(cfg, 30);
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_point(3, rng);
    const Region r = extract_region(p, cfg, x).region;
    const auto out = region_output(p, cfg, r);
    EXPECT_EQ(out, predict(p, cfg, x));
    EXPECT_EQ(region_output(p, cfg, r), predict(p, cfg, inside(r, rng)));
  }
}

TEST(RegionOutput, MismatchThrows) {
  const LeurnConfig cfg = make_config(3, 2, 5, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 30);
  const Region r = extract_region(p, cfg, std::vector<double>{0, 0, 0}).region;
  const LeurnConfig other = make_config(3, 1, 5, 0.0, TaskKind::kBinary);
  EXPECT_THROW(region_output(random_params(other, 1), other, r), Error);
}

TEST(Generate, SamplesMapBackToRegion) {
  const LeurnConfig cfg = make_config(3, 2, 5, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 12);
  const std::vector<Interval> bounds(3, Interval{-3.0, 3.0});
  Rng rng(6);
  for (int probe = 0; probe < 5; ++probe) {
    const auto x = random_point(3, rng);
    const Region r = extract_region(p, cfg, x).region;
    for (int i = 0; i < 100; ++i) {
      const GeneratedSample g = generate(p, cfg, r, rng, bounds);
      EXPECT_EQ(extract_region(p, cfg, g.model).region, r);
      EXPECT_EQ(predict(p, cfg, g.model), predict(p, cfg, x));
      for (std::size_t f = 0; f < 3; ++f) {
        EXPECT_GE(g.model[f], bounds[f].lower);
        EXPECT_LE(g.model[f], bounds[f].upper);
      }
    }
  }
}

TEST(Generate, UnboundedRegionStaysInDataBounds) {
  const LeurnConfig cfg = make_config(1, 0, 2, 0.0, TaskKind::kBinary);
  LeurnParams p = LeurnParams::zeros(cfg);
  p.tau0 = {-5.0};  // split far above the data
  const Region r = extract_region(p, cfg, std::vector<double>{0.0}).region;
  const std::vector<Interval> bounds{{-1.0, 1.0}};
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double v = generate(p, cfg, r, rng, bounds).model[0];
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Generate, EmptyClippedIntervalNamesFeature) {
  const LeurnConfig cfg = make_config(2, 0, 2, 0.0, TaskKind::kBinary);
  LeurnParams p = LeurnParams::zeros(cfg);
  p.tau0 = {0.0, -5.0};
  const Region r = extract_region(p, cfg, std::vector<double>{0.0, 6.0}).region;
  const std::vector<Interval> bounds{{-1.0, 1.0}, {-1.0, 1.0}};
  Rng rng(1);
  try {
    generate(p, cfg, r, rng, bounds);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("feature 1"), std::string::npos) << e.what();
  }
}

TEST(Generate, OneHotBlocksDrawAllowedLevels) {
  set_warnings_enabled(false);
  std::istringstream in("x,c,y\n1,a,0\n2,b,1\n3,c,0\n4,a,1\n5,b,0\n6,c,1\n");
  const LoadedTable t = parse_csv(in, "y");
  std::vector<std::size_t> rows{0, 1, 2, 3, 4, 5};
  const Preprocessor pre = Preprocessor::fit(t.table, t.schema, rows);
  set_warnings_enabled(true);
  ASSERT_EQ(pre.n_features(), 4u);
  const LeurnConfig cfg = make_config(4, 1, 2, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 9);
  const auto x = pre.transform_row(t.table.rows[1]);
  const Region r = extract_region(p, cfg, x, &pre).region;
  Rng rng(2);
  const auto bounds = pre.data_bounds();
  for (int i = 0; i < 50; ++i) {
    const GeneratedSample g = generate(p, cfg, r, rng, bounds, &pre);
    double hot = 0.0;
    for (std::size_t f = 1; f < 4; ++f) {
      EXPECT_TRUE(g.model[f] == 0.0 || g.model[f] == 1.0);
      hot += g.model[f];
    }
    EXPECT_EQ(hot, 1.0);
    EXPECT_TRUE(r.contains(g.model));
    EXPECT_EQ(pre.to_model(0, g.raw[0]), g.model[0]);
  }
}

}  // namespace
}  // namespace leurn
