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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "leurn/data.h"
#include "leurn/error.h"

namespace leurn {
namespace {

LoadedTable parse(const std::string& text, const std::string& target = "y") {
  std::istringstream in(text);
  return parse_csv(in, target);
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  return rows;
}

class QuietWarnings : public ::testing::Test {
 protected:
  void SetUp() override { set_warnings_enabled(false); }
  void TearDown() override { set_warnings_enabled(true); }
};

TEST(Csv, ParsesQuotedCells) {
  const auto cells = parse_csv_line(R"(a,"b,c","say ""hi""",,3)");
  ASSERT_EQ(cells.size(), 5u);
  EXPECT_EQ(*cells[0], "a");
  EXPECT_EQ(*cells[1], "b,c");
  EXPECT_EQ(*cells[2], "say \"hi\"");
  EXPECT_FALSE(cells[3].has_value());
  EXPECT_EQ(*cells[4], "3");
}

TEST(Csv, EscapeRoundTrip) {
  for (std::string s : {"plain", "a,b", "q\"uote", "line\nbreak"}) {
    const auto cells = parse_csv_line(csv_escape(s));
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_EQ(*cells[0], s);
  }
}

TEST(Csv, NumericColumnIsContinuous) {
  const LoadedTable t = parse("x,y\n1.5,0\n2.5,1\n3,0\n");
  ASSERT_EQ(t.schema.columns.size(), 2u);
  EXPECT_EQ(t.schema.columns[0].kind, ColumnKind::kContinuous);
  EXPECT_EQ(t.schema.columns[1].kind, ColumnKind::kTarget);
  EXPECT_EQ(t.schema.feature_columns(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(t.schema.task, TaskKind::kBinary);
  EXPECT_EQ(t.table.rows.size(), 3u);
}

TEST(Csv, TextColumnIsCategorical) {
  const LoadedTable t = parse("c,y\na,0\nb,1\na,1\n");
  EXPECT_EQ(t.schema.columns[0].kind, ColumnKind::kCategorical);
  EXPECT_EQ(t.schema.columns[0].levels.size(), 2u);
}

TEST(Csv, TaskInference) {
  EXPECT_EQ(parse("x,y\n1,0.5\n2,1.5\n").schema.task, TaskKind::kRegression);
  const LoadedTable mc = parse("x,y\n1,a\n2,b\n3,c\n");
  EXPECT_EQ(mc.schema.task, TaskKind::kMulticlass);
  EXPECT_EQ(mc.schema.num_classes(), 3u);
  const LoadedTable bin = parse("x,y\n1,no\n2,yes\n");
  EXPECT_EQ(bin.schema.class_labels, (std::vector<std::string>{"no", "yes"}));
}

TEST(Csv, MissingCellsAreMarked) {
  const LoadedTable t = parse("x,y\n,0\n2,1\n");
  EXPECT_FALSE(t.table.rows[0][0].has_value());
}

TEST(Csv, RaggedRowNamesTheRow) {
  try {
    parse("x,y\n1,0\n2\n");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos) << e.what();
  }
}

TEST(Csv, MissingTargetAndFile) {
  EXPECT_THROW(parse("x,z\n1,0\n"), Error);
  try {
    load_csv("/nonexistent/file.csv", "y");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Csv, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("leurn_data_test_" + std::to_string(::getpid()) + ".csv");
  {
    std::ofstream out(path);
    out << "a,b,y\n1,red,0\n2,blue,1\n";
  }
  const LoadedTable t = load_csv(path.string(), "y");
  EXPECT_EQ(t.table.header, (std::vector<std::string>{"a", "b", "y"}));
  std::filesystem::remove(path);
}

TEST(Split, DefaultRatios) {
  const auto tags = split(100, SplitRatios{}, 1);
  EXPECT_EQ(indices_of(tags, SplitTag::kTrain).size(), 65u);
  EXPECT_EQ(indices_of(tags, SplitTag::kVal).size(), 15u);
  EXPECT_EQ(indices_of(tags, SplitTag::kTest).size(), 20u);
}

TEST(Split, DeterministicPerSeed) {
  EXPECT_EQ(split(100, SplitRatios{}, 7), split(100, SplitRatios{}, 7));
  EXPECT_NE(split(100, SplitRatios{}, 7), split(100, SplitRatios{}, 8));
}

TEST(Split, DisjointAndExhaustive) {
  const auto tags = split(57, SplitRatios{}, 3);
  std::size_t total = 0;
  for (SplitTag t : {SplitTag::kTrain, SplitTag::kVal, SplitTag::kTest}) {
    total += indices_of(tags, t).size();
  }
  EXPECT_EQ(total, 57u);
}

TEST(Split, StratifiedPreservesMinorityCount) {
  std::vector<double> labels(200, 0.0);
  for (std::size_t i = 0; i < 20; ++i) labels[i * 10] = 1.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto tags = split(200, SplitRatios{}, seed, labels);
    const double expected[] = {0.65 * 20, 0.15 * 20, 0.20 * 20};
    const SplitTag which[] = {SplitTag::kTrain, SplitTag::kVal, SplitTag::kTest};
    for (int s = 0; s < 3; ++s) {
      std::size_t minority = 0;
      for (std::size_t i : indices_of(tags, which[s])) minority += labels[i] == 1.0;
      EXPECT_LE(std::abs(static_cast<double>(minority) - expected[s]), 1.0);
    }
  }
}

TEST(Split, Errors) {
  EXPECT_THROW(split(2, SplitRatios{}, 1), Error);
  EXPECT_THROW(split(10, SplitRatios{0.5, 0.5, 0.5}, 1), Error);
  // A class of one member cannot reach all three splits.
  std::vector<double> labels(20, 0.0);
  labels[0] = 1.0;
  EXPECT_THROW(split(20, SplitRatios{}, 1, labels), Error);
}

TEST_F(QuietWarnings, StandardizesOnTrainOnly) {
  const LoadedTable t = parse("x,y\n0,0\n2,1\n100,0\n");
  const Preprocessor p = Preprocessor::fit(t.table, t.schema, std::vector<std::size_t>{0, 1});
  ASSERT_EQ(p.n_features(), 1u);
  EXPECT_DOUBLE_EQ(p.features()[0].mean, 1.0);
  EXPECT_DOUBLE_EQ(p.features()[0].stddev, 1.0);
  EXPECT_DOUBLE_EQ(p.transform_row(t.table.rows[0])[0], -1.0);
  EXPECT_DOUBLE_EQ(p.transform_row(t.table.rows[1])[0], 1.0);
  EXPECT_DOUBLE_EQ(p.transform_row(t.table.rows[2])[0], 99.0);
}

TEST_F(QuietWarnings, OneHotEncoding) {
  const LoadedTable t = parse("c,y\nred,0\nblue,1\nred,1\n");
  const Preprocessor p = Preprocessor::fit(t.table, t.schema, all_rows(3));
  ASSERT_EQ(p.n_features(), 2u);
  EXPECT_EQ(p.transform_row(t.table.rows[0]), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(p.transform_row(t.table.rows[1]), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(p.feature_names()[0], "c=red");
}

TEST_F(QuietWarnings, UnseenLevelIsAllZero) {
  const LoadedTable t = parse("c,y\nred,0\nblue,1\ngreen,1\n");
  const Preprocessor p = Preprocessor::fit(t.table, t.schema, std::vector<std::size_t>{0, 1});
  EXPECT_EQ(p.transform_row(t.table.rows[2]), (std::vector<double>{0.0, 0.0}));
}

TEST_F(QuietWarnings, ContinuousFirstThenOneHotBlocks) {
  const LoadedTable t = parse("c,a,d,b,y\nu,1,p,5,0\nv,2,q,7,1\nu,4,p,6,1\n");
  const Preprocessor p = Preprocessor::fit(t.table, t.schema, all_rows(3));
  const auto names = p.feature_names();
  ASSERT_EQ(names.size(), 6u);
  EXPECT_EQ(names[0], "a");
  EXPECT_EQ(names[1], "b");
  EXPECT_EQ(names[2], "c=u");
  EXPECT_EQ(names[3], "c=v");
  EXPECT_EQ(names[4], "d=p");
  EXPECT_EQ(names[5], "d=q");
}

TEST_F(QuietWarnings, Imputation) {
  const LoadedTable t = parse("x,c,y\n1,a,0\n3,b,1\n10,b,0\n,,1\n");
  const Preprocessor p = Preprocessor::fit(t.table, t.schema, all_rows(3));
  const auto z = p.transform_row(t.table.rows[3]);
  // Median 3 and mode "b".
  EXPECT_DOUBLE_EQ(p.to_raw(0, z[0]), 3.0);
  EXPECT_EQ(z[1], 0.0);
  EXPECT_EQ(z[2], 1.0);
}

TEST_F(QuietWarnings, ConstantColumnIsDropped) {
  const LoadedTable t = parse("k,x,y\n5,1,0\n5,2,1\n5,3,0\n");
  const Preprocessor p = Preprocessor::fit(t.table, t.schema, all_rows(3));
  EXPECT_EQ(p.n_features(), 1u);
  EXPECT_EQ(p.feature_names()[0], "x");
}

TEST_F(QuietWarnings, TrainSplitIsStandardized) {
  const LabeledData d = half_moon({.n = 500, .noise = 0.2, .seed = 4});
  const Preprocessor p = Preprocessor::fit_matrix(d.x, all_rows(500), d.names);
  const Dataset ds = p.transform_matrix(d.x, d.y);
  for (std::size_t f = 0; f < 2; ++f) {
    double mean = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < 500; ++i) mean += ds.features(i, f);
    mean /= 500.0;
    for (std::size_t i = 0; i < 500; ++i) sq += std::pow(ds.features(i, f) - mean, 2);
    EXPECT_LE(std::abs(mean), 1e-9);
    EXPECT_LE(std::abs(std::sqrt(sq / 500.0) - 1.0), 1e-9);
  }
}

TEST_F(QuietWarnings, InverseIsIdentity) {
  const LabeledData d = half_moon({.n = 200, .noise = 0.1, .seed = 2});
  const Preprocessor p = Preprocessor::fit_matrix(d.x, all_rows(200), d.names);
  for (std::size_t i = 0; i < 200; ++i) {
    for (std::size_t f = 0; f < 2; ++f) {
      const double z = p.to_model(f, d.x(i, f));
      EXPECT_NEAR(p.to_raw(f, z), d.x(i, f), 1e-12);
    }
  }
}

TEST_F(QuietWarnings, DataBoundsAreTrainExtremes) {
  const LoadedTable t = parse("x,y\n0,0\n2,1\n4,0\n");
  const Preprocessor p = Preprocessor::fit(t.table, t.schema, all_rows(3));
  const auto b = p.data_bounds();
  EXPECT_DOUBLE_EQ(b[0].lower, p.to_model(0, 0.0));
  EXPECT_DOUBLE_EQ(b[0].upper, p.to_model(0, 4.0));
}

TEST_F(QuietWarnings, FitTransformUsesTrainRowsOnly) {
  const LoadedTable t = parse("x,y\n0,0\n2,1\n1000,0\n5,1\n");
  const std::vector<SplitTag> tags{SplitTag::kTrain, SplitTag::kTrain,
                                   SplitTag::kTest, SplitTag::kVal};
  const PreparedSplits s = fit_transform(t.table, t.schema, tags);
  EXPECT_EQ(s.train.rows(), 2u);
  EXPECT_EQ(s.val.rows(), 1u);
  EXPECT_EQ(s.test.rows(), 1u);
  EXPECT_DOUBLE_EQ(s.preprocessor.features()[0].mean, 1.0);
  EXPECT_DOUBLE_EQ(s.test.features(0, 0), 999.0);
  const std::vector<SplitTag> no_train(4, SplitTag::kTest);
  EXPECT_THROW(fit_transform(t.table, t.schema, no_train), Error);
}

TEST(HalfMoon, NoiselessPointsLieOnCircles) {
  const LabeledData d = half_moon({.n = 400, .noise = 0.0, .seed = 1});
  for (std::size_t i = 0; i < 400; ++i) {
    const double x = d.x(i, 0), y = d.x(i, 1);
    if (d.y[i] == 0.0) {
      EXPECT_NEAR(x * x + y * y, 1.0, 1e-12);
      EXPECT_GE(y, -1e-12);
    } else {
      EXPECT_NEAR((x - 1.0) * (x - 1.0) + (y - 0.5) * (y - 0.5), 1.0, 1e-12);
      EXPECT_LE(y, 0.5 + 1e-12);
    }
  }
}

TEST(HalfMoon, RotationInverts) {
  const LabeledData plain = half_moon({.n = 100, .noise = 0.1, .seed = 3});
  const LabeledData rotated =
      half_moon({.n = 100, .noise = 0.1, .rotation_degrees = 45.0, .seed = 3});
  const double a = -45.0 * std::numbers::pi / 180.0;
  for (std::size_t i = 0; i < 100; ++i) {
    const double x = rotated.x(i, 0), y = rotated.x(i, 1);
    EXPECT_NEAR(std::cos(a) * x - std::sin(a) * y, plain.x(i, 0), 1e-12);
    EXPECT_NEAR(std::sin(a) * x + std::cos(a) * y, plain.x(i, 1), 1e-12);
  }
}

TEST(HalfMoon, NoiseFeaturesAndBalance) {
  const LabeledData d = half_moon({.n = 101, .noise_features = 10, .seed = 5});
  EXPECT_EQ(d.x.cols(), 12u);
  EXPECT_EQ(d.names.size(), 12u);
  double positives = 0.0;
  for (double y : d.y) positives += y;
  EXPECT_EQ(positives, 51.0);
  for (std::size_t i = 0; i < 101; ++i) {
    for (std::size_t f = 2; f < 12; ++f) {
      EXPECT_GE(d.x(i, f), -1.0);
      EXPECT_LT(d.x(i, f), 1.0);
    }
  }
  EXPECT_THROW(half_moon({.n = 1}), Error);
}

}  // namespace
}  // namespace leurn
