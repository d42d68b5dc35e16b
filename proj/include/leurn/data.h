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
#ifndef LEURN_DATA_H_
#define LEURN_DATA_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leurn/model.h"
#include "leurn/numeric.h"
#include "leurn/task.h"

namespace leurn {

// A fully numeric, standardized dataset ready for training.
struct Dataset {
  Matrix features;
  // 0/1 for binary, class index for multiclass, real value for regression.
  std::vector<double> targets;
  TaskKind task = TaskKind::kBinary;
  // Class count for classification tasks, 1 for regression.
  std::size_t num_classes = 2;
  std::vector<std::string> feature_names;

  std::size_t rows() const { return features.rows(); }
  std::size_t n_features() const { return features.cols(); }
  std::span<const double> row(std::size_t i) const { return features.row(i); }
  std::size_t output_dim() const {
    return task == TaskKind::kMulticlass ? num_classes : 1;
  }

  Dataset subset(std::span<const std::size_t> indices) const;
};

// --- CSV and schema -------------------------------------------------------

using Cell = std::optional<std::string>;
using RawRow = std::vector<Cell>;

struct RawTable {
  std::vector<std::string> header;
  std::vector<RawRow> rows;
};

enum class ColumnKind { kContinuous, kCategorical, kTarget };

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::kContinuous;
  // Distinct values, sorted; categorical columns only.
  std::vector<std::string> levels;
};

struct Schema {
  std::vector<ColumnSchema> columns;
  std::size_t target_index = 0;
  TaskKind task = TaskKind::kBinary;
  // Sorted class labels for classification targets. For binary targets the
  // second label is the positive class.
  std::vector<std::string> class_labels;

  std::vector<std::size_t> feature_columns() const;
  std::size_t num_classes() const {
    return task == TaskKind::kRegression ? 1 : class_labels.size();
  }
};

struct LoadedTable {
  RawTable table;
  Schema schema;
};

// Splits one CSV record (RFC 4180 quoting). Empty cells become nullopt.
std::vector<Cell> parse_csv_line(const std::string& line);

// Parses a CSV stream with a header row. `task` overrides target inference.
LoadedTable parse_csv(std::istream& in, const std::string& target,
                      std::optional<TaskKind> task = std::nullopt);
LoadedTable load_csv(const std::string& path, const std::string& target,
                     std::optional<TaskKind> task = std::nullopt);

std::string csv_escape(const std::string& cell);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
std::string format_double(double v);

// --- splits ---------------------------------------------------------------

enum class SplitTag : std::uint8_t { kTrain, kVal, kTest };

struct SplitRatios {
  double train = 0.65;
  double val = 0.15;
  double test = 0.20;
};

// Seeded shuffle then partition. When `labels` is given, each class is
// partitioned separately (stratification).
std::vector<SplitTag> split(std::size_t n, const SplitRatios& ratios,
                            std::uint64_t seed,
                            std::span<const double> labels = {});

std::vector<std::size_t> indices_of(std::span<const SplitTag> tags,
                                    SplitTag which);

// --- preprocessing --------------------------------------------------------

// One column of the encoded (model input) feature space.
struct EncodedFeature {
  std::string name;
  std::size_t source_column = 0;
  bool one_hot = false;
  std::string level;  // one-hot only
  double mean = 0.0;
  double stddev = 1.0;
  // Training-set extremes, in model units.
  double data_min = 0.0;
  double data_max = 0.0;

  friend bool operator==(const EncodedFeature&, const EncodedFeature&) = default;
};

struct ColumnEncoding {
  std::size_t source_column = 0;
  std::string name;
  ColumnKind kind = ColumnKind::kContinuous;
  bool dropped = false;
  // Continuous: train median. Categorical: train mode.
  double impute_value = 0.0;
  std::string impute_level;
  std::vector<std::string> levels;
  // Index range of this column in the encoded feature vector.
  std::size_t first_feature = 0;
  std::size_t feature_count = 0;

  friend bool operator==(const ColumnEncoding&, const ColumnEncoding&) = default;
};

class Preprocessor {
 public:
  Preprocessor() = default;

  // Fits statistics, encodings and imputation values on `train_rows` only.
  static Preprocessor fit(const RawTable& table, const Schema& schema,
                          std::span<const std::size_t> train_rows);
  // Continuous-only preprocessor fitted on the given rows of a matrix.
  static Preprocessor fit_matrix(const Matrix& x,
                                 std::span<const std::size_t> train_rows,
                                 const std::vector<std::string>& names);

  std::size_t n_features() const { return features_.size(); }
  const std::vector<EncodedFeature>& features() const { return features_; }
  const std::vector<ColumnEncoding>& columns() const { return columns_; }
  std::vector<std::string> feature_names() const;
  TaskKind task() const { return task_; }
  const std::vector<std::string>& class_labels() const { return class_labels_; }
  std::size_t target_column() const { return target_column_; }
  std::size_t raw_width() const { return raw_width_; }

  // Encodes one full-width raw row (the target cell is ignored).
  std::vector<double> transform_row(const RawRow& row) const;
  double encode_target(const Cell& cell) const;
  Dataset transform(const RawTable& table,
                    std::span<const std::size_t> rows) const;
  Dataset transform_matrix(const Matrix& x,
                           std::span<const double> targets) const;

  // Model units <-> raw units for encoded feature f. One-hot features are
  // not rescaled.
  double to_raw(std::size_t f, double z) const;
  double to_model(std::size_t f, double raw) const;
  // Training-set [min, max] per encoded feature, in model units.
  std::vector<Interval> data_bounds() const;
  // Raw cells (feature columns only, in schema order) for an encoded vector.
  std::vector<std::string> inverse_row(std::span<const double> z) const;

  // Raw cells parsed from a row that may omit the target column.
  RawRow complete_row(const std::vector<Cell>& cells) const;

  std::vector<std::string> raw_header() const { return raw_header_; }

  // Internal state exposed for persistence.
  struct State {
    std::vector<EncodedFeature> features;
    std::vector<ColumnEncoding> columns;
    TaskKind task = TaskKind::kBinary;
    std::vector<std::string> class_labels;
    std::size_t target_column = 0;
    std::size_t raw_width = 0;
    std::vector<std::string> raw_header;
  };
  State state() const;
  static Preprocessor from_state(State state);

  friend bool operator==(const Preprocessor&, const Preprocessor&) = default;

 private:
  std::vector<EncodedFeature> features_;
  std::vector<ColumnEncoding> columns_;
  TaskKind task_ = TaskKind::kBinary;
  std::vector<std::string> class_labels_;
  std::size_t target_column_ = 0;
  std::size_t raw_width_ = 0;
  std::vector<std::string> raw_header_;
};

struct PreparedSplits {
  Preprocessor preprocessor;
  Dataset train;
  Dataset val;
  Dataset test;
};

PreparedSplits fit_transform(const RawTable& table, const Schema& schema,
                             std::span<const SplitTag> tags);

// Classification labels used for stratification, or empty for regression.
std::vector<double> stratification_labels(const RawTable& table,
                                          const Schema& schema);

// --- synthetic data -------------------------------------------------------

struct HalfMoonOptions {
  std::size_t n = 1000;
  double noise = 0.1;
  double rotation_degrees = 0.0;
  std::size_t noise_features = 0;
  std::uint64_t seed = 0;
};

struct LabeledData {
  Matrix x;
  std::vector<double> y;
  std::vector<std::string> names;
};

// Two interleaved half circles: class 0 on (cos t, sin t), class 1 on
// (1 - cos t, 0.5 - sin t), t ~ U[0, pi], plus Gaussian noise, a rotation
// about the origin, and optional U(-1, 1) distractor features.
LabeledData half_moon(const HalfMoonOptions& options);

// Standardizes `train` with its own statistics and applies them to `val`.
struct ToySplits {
  Preprocessor preprocessor;
  Dataset train;
  Dataset val;
};
ToySplits standardize_pair(const LabeledData& train, const LabeledData& val);

}  // namespace leurn

#endif  // LEURN_DATA_H_
