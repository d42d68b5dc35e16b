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
#include <vector>

#include "leurn/error.h"
#include "leurn/rules.h"
#include "leurn/similarity.h"
#include "test_util.h"

namespace leurn {
namespace {

using testing::random_params;
using testing::random_point;

Dataset random_dataset(std::size_t rows, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Dataset d;
  d.features = Matrix(rows, n);
  for (double& v : d.features.data()) v = rng.uniform(-2.0, 2.0);
  d.targets.assign(rows, 0.0);
  return d;
}

TEST(Embed, TinyModel) {
  const auto e = embed(testing::tiny_params(), testing::tiny_config(),
                       std::vector<double>{0.5});
  ASSERT_EQ(e.size(), 1u);
  EXPECT_DOUBLE_EQ(e[0], 0.5 * std::tanh(0.3));
  EXPECT_NEAR(e[0], 0.145655, 1e-5);
}

TEST(Embed, ZeroThresholdsGiveZeroEmbedding) {
  const LeurnConfig cfg = make_config(3, 0, 5, 0.0, TaskKind::kBinary);
  LeurnParams p = random_params(cfg, 1);
  p.tau0 = {0.0, 0.0, 0.0};
  for (double v : embed(p, cfg, std::vector<double>{1.0, -1.0, 0.3})) EXPECT_EQ(v, 0.0);
}

TEST(Embed, SameRegionSameEmbedding) {
  const LeurnConfig cfg = make_config(3, 2, 5, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 2);
  const std::vector<Interval> bounds(3, Interval{-3.0, 3.0});
  Rng rng(3);
  const auto x = random_point(3, rng);
  const Region r = extract_region(p, cfg, x).region;
  const auto ref = embed(p, cfg, x);
  for (int i = 0; i < 50; ++i) {
    const auto g = generate(p, cfg, r, rng, bounds);
    EXPECT_EQ(embed(p, cfg, g.model), ref);
  }
}

TEST(Embed, EntriesAreBounded) {
  const LeurnConfig cfg = make_config(3, 2, 5, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 2, 3.0);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    for (double v : embed(p, cfg, random_point(3, rng))) {
      EXPECT_LT(std::abs(v), 1.0 - 1.0 / 5.0 + 1e-15);
    }
  }
}

TEST(Rbf, Basics) {
  const std::vector<double> a{0.1, 0.2}, b{1.1, 0.2};
  EXPECT_EQ(rbf_similarity(a, a, 0.7), 1.0);
  EXPECT_EQ(rbf_similarity(a, b, 0.7), rbf_similarity(b, a, 0.7));
  EXPECT_NEAR(rbf_similarity(a, b, 1.0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(rbf_similarity(a, b, 1.0), 0.367879, 1e-6);
}

TEST(Rbf, MonotoneInDistance) {
  const std::vector<double> a{0.0};
  double prev = 1.0;
  for (double d = 0.1; d < 3.0; d += 0.1) {
    const double s = rbf_similarity(a, std::vector<double>{d}, 0.5);
    EXPECT_LT(s, prev);
    EXPECT_GT(s, 0.0);
    prev = s;
  }
}

TEST(Rbf, Errors) {
  EXPECT_THROW(rbf_similarity(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}, 1.0),
               Error);
  EXPECT_THROW(rbf_similarity(std::vector<double>{1.0}, std::vector<double>{1.0}, 0.0),
               Error);
}

TEST(Index, DefaultGammaAndSize) {
  const LeurnConfig cfg = make_config(3, 2, 5, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 4);
  const EmbeddingIndex idx = EmbeddingIndex::build(p, cfg, random_dataset(30, 3, 1));
  EXPECT_EQ(idx.size(), 30u);
  EXPECT_DOUBLE_EQ(idx.gamma, 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(EmbeddingIndex::build(p, cfg, random_dataset(5, 3, 1), 2.5).gamma, 2.5);
}

TEST(Confidence, TrainingRowsScoreOne) {
  const LeurnConfig cfg = make_config(3, 2, 5, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 4);
  const Dataset d = random_dataset(100, 3, 2);
  const EmbeddingIndex idx = EmbeddingIndex::build(p, cfg, d);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    EXPECT_EQ(confidence(p, cfg, idx, d.row(i)), 1.0);
  }
}

TEST(Confidence, MatchesBruteForceMaximum) {
  const LeurnConfig cfg = make_config(3, 2, 5, 0.0, TaskKind::kBinary);
  const LeurnParams p = random_params(cfg, 4);
  const Dataset d = random_dataset(60, 3, 5);
  const EmbeddingIndex idx = EmbeddingIndex::build(p, cfg, d);
  Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    const auto x = random_point(3, rng, -6.0, 6.0);
    const auto e = embed(p, cfg, x);
    double best = 0.0;
    for (std::size_t r = 0; r < d.rows(); ++r) {
      best = std::max(best, rbf_similarity(e, embed(p, cfg, d.row(r)), idx.gamma));
    }
    const double c = confidence(p, cfg, idx, x);
    EXPECT_EQ(c, best);
    EXPECT_GT(c, 0.0);
    EXPECT_LE(c, 1.0);
  }
}

TEST(Confidence, EmptyIndexThrows) {
  EmbeddingIndex idx;
  try {
    confidence(testing::tiny_params(), testing::tiny_config(), idx,
               std::vector<double>{0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingIndex);
  }
}

}  // namespace
}  // namespace leurn
