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
#include "leurn/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "leurn/error.h"

namespace leurn {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (*begin == '+') ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string row_label(std::size_t data_row) {
  // Header is line 1.
  return "row " + std::to_string(data_row + 2);
}

}  // namespace

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.task = task;
  out.num_classes = num_classes;
  out.feature_names = feature_names;
  out.features = Matrix(indices.size(), n_features());
  out.targets.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.features.row(i).begin());
    out.targets.push_back(targets[indices[i]]);
  }
  return out;
}

// --- CSV ------------------------------------------------------------------

std::vector<Cell> parse_csv_line(const std::string& line) {
  std::vector<Cell> cells;
  std::string current;
  bool in_quotes = false;
  bool quoted = false;
  auto flush = [&]() {
    std::string value = quoted ? current : trim(current);
    if (value.empty() && !quoted) {
      cells.emplace_back(std::nullopt);
    } else {
      cells.emplace_back(std::move(value));
    }
    current.clear();
    quoted = false;
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
      quoted = true;
    } else if (c == ',') {
      flush();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::kParse, "unterminated quoted field");
  }
  flush();
  return cells;
}

LoadedTable parse_csv(std::istream& in, const std::string& target,
                      std::optional<TaskKind> task) {
  LoadedTable out;
  RawTable& table = out.table;
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kParse, "empty CSV: missing header row");
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  for (const auto& cell : parse_csv_line(line)) {
    table.header.push_back(cell.value_or(""));
  }
  const auto target_it =
      std::find(table.header.begin(), table.header.end(), target);
  if (target_it == table.header.end()) {
    throw Error(ErrorCode::kData, "target column '" + target + "' not found");
  }
  const std::size_t width = table.header.size();
  const auto target_index =
      static_cast<std::size_t>(target_it - table.header.begin());

  std::size_t data_row = 0;
  std::size_t dropped = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) {
      ++data_row;
      continue;
    }
    std::vector<Cell> cells;
    try {
      cells = parse_csv_line(line);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, row_label(data_row) + ": " + e.what());
    }
    if (cells.size() != width) {
      throw Error(ErrorCode::kParse,
                  row_label(data_row) + ": expected " + std::to_string(width) +
                      " fields, found " + std::to_string(cells.size()));
    }
    ++data_row;
    if (!cells[target_index]) {
      ++dropped;
      continue;
    }
    table.rows.push_back(std::move(cells));
  }
  if (dropped > 0) {
    warn(std::to_string(dropped) + " rows with a missing target were dropped");
  }
  if (table.rows.empty()) throw Error(ErrorCode::kData, "CSV has no data rows");

  Schema& schema = out.schema;
  schema.target_index = target_index;
  schema.columns.resize(width);
  for (std::size_t c = 0; c < width; ++c) {
    ColumnSchema& col = schema.columns[c];
    col.name = table.header[c];
    bool numeric = true;
    std::vector<std::string> distinct;
    for (const auto& row : table.rows) {
      if (!row[c]) continue;
      if (numeric && !parse_number(*row[c])) numeric = false;
      distinct.push_back(*row[c]);
    }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    if (c == target_index) {
      col.kind = ColumnKind::kTarget;
      TaskKind inferred;
      if (numeric) {
        bool binary01 = true;
        for (const auto& v : distinct) {
          const double x = *parse_number(v);
          if (x != 0.0 && x != 1.0) binary01 = false;
        }
        inferred = binary01 ? TaskKind::kBinary : TaskKind::kRegression;
      } else {
        inferred = distinct.size() > 2 ? TaskKind::kMulticlass
                                       : TaskKind::kBinary;
      }
      schema.task = task.value_or(inferred);
      if (schema.task != TaskKind::kRegression) {
        if (numeric) {
          std::map<double, std::string> by_value;
          for (const auto& v : distinct) by_value.emplace(*parse_number(v), v);
          for (const auto& [value, label] : by_value) {
            schema.class_labels.push_back(label);
          }
        } else {
          schema.class_labels = distinct;
        }
        if (schema.class_labels.size() < 2) {
          throw Error(ErrorCode::kData,
                      "target '" + target + "' has fewer than 2 classes");
        }
        if (schema.task == TaskKind::kBinary &&
            schema.class_labels.size() != 2) {
          throw Error(ErrorCode::kData,
                      "binary target '" + target + "' has " +
                          std::to_string(schema.class_labels.size()) +
                          " classes");
        }
      } else if (!numeric) {
        throw Error(ErrorCode::kData,
                    "regression target '" + target + "' is not numeric");
      }
    } else if (numeric) {
      col.kind = ColumnKind::kContinuous;
    } else {
      col.kind = ColumnKind::kCategorical;
      col.levels = std::move(distinct);
    }
  }
  return out;
}

LoadedTable load_csv(const std::string& path, const std::string& target,
                     std::optional<TaskKind> task) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return parse_csv(in, target, task);
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(cells[i]);
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, ptr);
}

std::vector<std::size_t> Schema::feature_columns() const {
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c != target_index) cols.push_back(c);
  }
  return cols;
}

// --- splits ---------------------------------------------------------------

std::vector<SplitTag> split(std::size_t n, const SplitRatios& ratios,
                            std::uint64_t seed,
                            std::span<const double> labels) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "split: need n >= 3");
  if (ratios.train < 0 || ratios.val < 0 || ratios.test < 0 ||
      std::abs(ratios.train + ratios.val + ratios.test - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                "split: ratios must be non-negative and sum to 1");
  }
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::kShapeMismatch, "split: labels length != n");
  }
  Rng rng(seed);
  std::vector<SplitTag> tags(n, SplitTag::kTest);

  std::map<double, std::vector<std::size_t>> groups;
  if (labels.empty()) {
    auto& all = groups[0.0];
    for (std::size_t i = 0; i < n; ++i) all.push_back(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) groups[labels[i]].push_back(i);
  }
  for (auto& [label, members] : groups) {
    rng.shuffle(members);
    const double c = static_cast<double>(members.size());
    auto n_train = static_cast<std::size_t>(std::llround(c * ratios.train));
    auto n_val = static_cast<std::size_t>(std::llround(c * ratios.val));
    n_train = std::min(n_train, members.size());
    n_val = std::min(n_val, members.size() - n_train);
    const std::size_t n_test = members.size() - n_train - n_val;
    if (!labels.empty()) {
      const bool missing = (ratios.train > 0 && n_train == 0) ||
                           (ratios.val > 0 && n_val == 0) ||
                           (ratios.test > 0 && n_test == 0);
      if (missing) {
        throw Error(ErrorCode::kData,
                    "split: class " + format_double(label) +
                        " is absent from a split after stratification");
      }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      tags[members[i]] = i < n_train           ? SplitTag::kTrain
                         : i < n_train + n_val ? SplitTag::kVal
                                               : SplitTag::kTest;
    }
  }
  return tags;
}

std::vector<std::size_t> indices_of(std::span<const SplitTag> tags,
                                    SplitTag which) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] == which) out.push_back(i);
  }
  return out;
}

// --- preprocessing --------------------------------------------------------

Preprocessor Preprocessor::fit(const RawTable& table, const Schema& schema,
                               std::span<const std::size_t> train_rows) {
  if (train_rows.empty()) {
    throw Error(ErrorCode::kData, "fit_transform: train split is empty");
  }
  Preprocessor p;
  p.task_ = schema.task;
  p.class_labels_ = schema.class_labels;
  p.target_column_ = schema.target_index;
  p.raw_width_ = schema.columns.size();
  p.raw_header_ = table.header;

  // Continuous features first, then one-hot blocks, each in file order.
  std::vector<std::size_t> order;
  for (std::size_t c : schema.feature_columns()) {
    if (schema.columns[c].kind == ColumnKind::kContinuous) order.push_back(c);
  }
  for (std::size_t c : schema.feature_columns()) {
    if (schema.columns[c].kind != ColumnKind::kContinuous) order.push_back(c);
  }
  for (std::size_t c : order) {
    const ColumnSchema& col = schema.columns[c];
    ColumnEncoding enc;
    enc.source_column = c;
    enc.name = col.name;
    enc.kind = col.kind;
    enc.first_feature = p.features_.size();

    if (col.kind == ColumnKind::kContinuous) {
      std::vector<double> present;
      for (std::size_t r : train_rows) {
        const Cell& cell = table.rows[r][c];
        if (cell) present.push_back(*parse_number(*cell));
      }
      if (present.empty()) {
        enc.dropped = true;
        warn("column '" + col.name + "' has no training values; dropped");
        p.columns_.push_back(std::move(enc));
        continue;
      }
      std::vector<double> sorted = present;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t m = sorted.size();
      enc.impute_value = m % 2 == 1 ? sorted[m / 2]
                                    : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
      std::vector<double> values;
      values.reserve(train_rows.size());
      for (std::size_t r : train_rows) {
        const Cell& cell = table.rows[r][c];
        values.push_back(cell ? *parse_number(*cell) : enc.impute_value);
      }
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      var /= static_cast<double>(values.size());
      const double sd = std::sqrt(var);
      if (!(sd > 0.0)) {
        enc.dropped = true;
        warn("column '" + col.name + "' is constant on the training split; "
             "dropped");
        p.columns_.push_back(std::move(enc));
        continue;
      }
      EncodedFeature f;
      f.name = col.name;
      f.source_column = c;
      f.mean = mean;
      f.stddev = sd;
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      f.data_min = (*lo - mean) / sd;
      f.data_max = (*hi - mean) / sd;
      p.features_.push_back(f);
      enc.feature_count = 1;
    } else {
      // Levels in order of first appearance; ties for the mode go to the
      // earlier level.
      std::map<std::string, std::size_t> counts;
      for (std::size_t r : train_rows) {
        const Cell& cell = table.rows[r][c];
        if (cell && counts[*cell]++ == 0) enc.levels.push_back(*cell);
      }
      std::size_t best = 0;
      for (const auto& level : enc.levels) {
        if (counts[level] > best) {
          best = counts[level];
          enc.impute_level = level;
        }
      }
      if (enc.levels.size() < 2) {
        enc.dropped = true;
        warn("column '" + col.name + "' has fewer than 2 training levels; "
             "dropped");
        p.columns_.push_back(std::move(enc));
        continue;
      }
      for (const auto& level : enc.levels) {
        EncodedFeature f;
        f.name = col.name + "=" + level;
        f.source_column = c;
        f.one_hot = true;
        f.level = level;
        f.data_min = 0.0;
        f.data_max = 1.0;
        p.features_.push_back(f);
      }
      enc.feature_count = enc.levels.size();
    }
    p.columns_.push_back(std::move(enc));
  }
  std::sort(p.columns_.begin(), p.columns_.end(),
            [](const ColumnEncoding& a, const ColumnEncoding& b) {
              return a.source_column < b.source_column;
            });
  if (p.features_.empty()) {
    throw Error(ErrorCode::kData, "no usable feature columns");
  }
  return p;
}

Preprocessor Preprocessor::fit_matrix(const Matrix& x,
                                      std::span<const std::size_t> train_rows,
                                      const std::vector<std::string>& names) {
  if (names.size() != x.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "fit_matrix: names length");
  }
  RawTable table;
  table.header = names;
  table.header.push_back("label");
  table.rows.reserve(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    RawRow row;
    for (double v : x.row(r)) row.emplace_back(format_double(v));
    row.emplace_back("0");
    table.rows.push_back(std::move(row));
  }
  Schema schema;
  for (const auto& name : names) {
    schema.columns.push_back({name, ColumnKind::kContinuous, {}});
  }
  schema.columns.push_back({"label", ColumnKind::kTarget, {}});
  schema.target_index = names.size();
  schema.task = TaskKind::kBinary;
  schema.class_labels = {"0", "1"};
  return fit(table, schema, train_rows);
}

std::vector<std::string> Preprocessor::feature_names() const {
  std::vector<std::string> names;
  for (const auto& f : features_) names.push_back(f.name);
  return names;
}

namespace {

void encode_into(const Preprocessor& p, const RawRow& row,
                 std::vector<double>& out, std::vector<std::size_t>* unseen) {
  if (row.size() != p.raw_width()) {
    throw Error(ErrorCode::kShapeMismatch,
                "row has " + std::to_string(row.size()) + " fields, expected " +
                    std::to_string(p.raw_width()));
  }
  out.assign(p.n_features(), 0.0);
  const auto& features = p.features();
  for (std::size_t ci = 0; ci < p.columns().size(); ++ci) {
    const ColumnEncoding& enc = p.columns()[ci];
    if (enc.dropped) continue;
    const Cell& cell = row[enc.source_column];
    if (enc.kind == ColumnKind::kContinuous) {
      double v = enc.impute_value;
      if (cell) {
        const auto parsed = parse_number(*cell);
        if (!parsed) {
          throw Error(ErrorCode::kData, "column '" + enc.name +
                                            "': non-numeric value '" + *cell +
                                            "'");
        }
        v = *parsed;
      }
      const EncodedFeature& f = features[enc.first_feature];
      out[enc.first_feature] = (v - f.mean) / f.stddev;
    } else {
      const std::string& level = cell ? *cell : enc.impute_level;
      const auto it = std::find(enc.levels.begin(), enc.levels.end(), level);
      if (it == enc.levels.end()) {
        if (unseen) {
          (*unseen)[ci] += 1;
        } else {
          warn("column '" + enc.name + "': unseen level '" + level +
               "' encoded as all zeros");
        }
        continue;
      }
      out[enc.first_feature +
          static_cast<std::size_t>(it - enc.levels.begin())] = 1.0;
    }
  }
}

}  // namespace

std::vector<double> Preprocessor::transform_row(const RawRow& row) const {
  std::vector<double> out;
  encode_into(*this, row, out, nullptr);
  return out;
}

double Preprocessor::encode_target(const Cell& cell) const {
  if (!cell) throw Error(ErrorCode::kData, "missing target value");
  if (task_ == TaskKind::kRegression) {
    const auto v = parse_number(*cell);
    if (!v) throw Error(ErrorCode::kData, "non-numeric target '" + *cell + "'");
    return *v;
  }
  for (std::size_t i = 0; i < class_labels_.size(); ++i) {
    if (class_labels_[i] == *cell) return static_cast<double>(i);
  }
  const auto v = parse_number(*cell);
  if (v) {
    for (std::size_t i = 0; i < class_labels_.size(); ++i) {
      const auto label = parse_number(class_labels_[i]);
      if (label && *label == *v) return static_cast<double>(i);
    }
  }
  throw Error(ErrorCode::kData, "unknown class label '" + *cell + "'");
}

Dataset Preprocessor::transform(const RawTable& table,
                                std::span<const std::size_t> rows) const {
  Dataset ds;
  ds.task = task_;
  ds.num_classes = task_ == TaskKind::kRegression ? 1 : class_labels_.size();
  ds.feature_names = feature_names();
  ds.features = Matrix(rows.size(), n_features());
  ds.targets.reserve(rows.size());
  std::vector<std::size_t> unseen(columns_.size(), 0);
  std::vector<double> encoded;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RawRow& row = table.rows[rows[i]];
    encode_into(*this, row, encoded, &unseen);
    std::copy(encoded.begin(), encoded.end(), ds.features.row(i).begin());
    ds.targets.push_back(encode_target(row[target_column_]));
  }
  for (std::size_t ci = 0; ci < columns_.size(); ++ci) {
    if (unseen[ci] > 0) {
      warn("column '" + columns_[ci].name + "': " + std::to_string(unseen[ci]) +
           " rows with levels unseen in training encoded as all zeros");
    }
  }
  return ds;
}

Dataset Preprocessor::transform_matrix(const Matrix& x,
                                       std::span<const double> targets) const {
  if (x.cols() != n_features() || targets.size() != x.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "transform_matrix: shape mismatch");
  }
  Dataset ds;
  ds.task = task_;
  ds.num_classes = task_ == TaskKind::kRegression ? 1 : class_labels_.size();
  ds.feature_names = feature_names();
  ds.features = Matrix(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t f = 0; f < x.cols(); ++f) {
      ds.features(r, f) = to_model(f, x(r, f));
    }
  }
  ds.targets.assign(targets.begin(), targets.end());
  return ds;
}

double Preprocessor::to_raw(std::size_t f, double z) const {
  const EncodedFeature& feat = features_.at(f);
  return feat.one_hot ? z : feat.mean + feat.stddev * z;
}

double Preprocessor::to_model(std::size_t f, double raw) const {
  const EncodedFeature& feat = features_.at(f);
  return feat.one_hot ? raw : (raw - feat.mean) / feat.stddev;
}

std::vector<Interval> Preprocessor::data_bounds() const {
  std::vector<Interval> bounds;
  bounds.reserve(features_.size());
  for (const auto& f : features_) bounds.push_back({f.data_min, f.data_max});
  return bounds;
}

std::vector<std::string> Preprocessor::inverse_row(
    std::span<const double> z) const {
  if (z.size() != n_features()) {
    throw Error(ErrorCode::kShapeMismatch, "inverse_row: wrong length");
  }
  std::vector<std::string> cells;
  for (const ColumnEncoding& enc : columns_) {
    if (enc.kind == ColumnKind::kContinuous) {
      cells.push_back(enc.dropped
                          ? format_double(enc.impute_value)
                          : format_double(to_raw(enc.first_feature,
                                                 z[enc.first_feature])));
    } else if (enc.dropped) {
      cells.push_back(enc.impute_level);
    } else {
      std::string level;
      double best = 0.5;
      for (std::size_t i = 0; i < enc.feature_count; ++i) {
        if (z[enc.first_feature + i] >= best) {
          best = z[enc.first_feature + i];
          level = enc.levels[i];
        }
      }
      cells.push_back(level);
    }
  }
  return cells;
}

RawRow Preprocessor::complete_row(const std::vector<Cell>& cells) const {
  if (cells.size() == raw_width_) return cells;
  if (cells.size() + 1 == raw_width_) {
    RawRow row = cells;
    row.insert(row.begin() + static_cast<std::ptrdiff_t>(target_column_),
               std::nullopt);
    return row;
  }
  throw Error(ErrorCode::kShapeMismatch,
              "row has " + std::to_string(cells.size()) + " fields, expected " +
                  std::to_string(raw_width_ - 1) + " features (or " +
                  std::to_string(raw_width_) + " with target)");
}

Preprocessor::State Preprocessor::state() const {
  return State{features_,      columns_,   task_,      class_labels_,
               target_column_, raw_width_, raw_header_};
}

Preprocessor Preprocessor::from_state(State state) {
  Preprocessor p;
  p.features_ = std::move(state.features);
  p.columns_ = std::move(state.columns);
  p.task_ = state.task;
  p.class_labels_ = std::move(state.class_labels);
  p.target_column_ = state.target_column;
  p.raw_width_ = state.raw_width;
  p.raw_header_ = std::move(state.raw_header);
  return p;
}

PreparedSplits fit_transform(const RawTable& table, const Schema& schema,
                             std::span<const SplitTag> tags) {
  if (tags.size() != table.rows.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "fit_transform: split assignment length != row count");
  }
  const auto train_rows = indices_of(tags, SplitTag::kTrain);
  PreparedSplits out;
  out.preprocessor = Preprocessor::fit(table, schema, train_rows);
  out.train = out.preprocessor.transform(table, train_rows);
  out.val = out.preprocessor.transform(table, indices_of(tags, SplitTag::kVal));
  out.test =
      out.preprocessor.transform(table, indices_of(tags, SplitTag::kTest));
  return out;
}

std::vector<double> stratification_labels(const RawTable& table,
                                          const Schema& schema) {
  if (schema.task == TaskKind::kRegression) return {};
  std::vector<double> labels;
  labels.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    const std::string& v = *row[schema.target_index];
    const auto it = std::find(schema.class_labels.begin(),
                              schema.class_labels.end(), v);
    labels.push_back(static_cast<double>(it - schema.class_labels.begin()));
  }
  return labels;
}

// --- synthetic data -------------------------------------------------------

LabeledData half_moon(const HalfMoonOptions& options) {
  if (options.n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "half_moon: n must be >= 2");
  }
  Rng rng(options.seed);
  const std::size_t width = 2 + options.noise_features;
  LabeledData data;
  data.x = Matrix(options.n, width);
  data.y.resize(options.n);
  data.names = {"x", "y"};
  for (std::size_t j = 0; j < options.noise_features; ++j) {
    data.names.push_back("noise_" + std::to_string(j + 1));
  }
  const double angle = options.rotation_degrees * std::numbers::pi / 180.0;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const std::size_t n_outer = options.n / 2;
  for (std::size_t i = 0; i < options.n; ++i) {
    const bool inner = i >= n_outer;
    const double t = rng.uniform(0.0, std::numbers::pi);
    double px = inner ? 1.0 - std::cos(t) : std::cos(t);
    double py = inner ? 0.5 - std::sin(t) : std::sin(t);
    if (options.noise > 0.0) {
      px += options.noise * rng.normal();
      py += options.noise * rng.normal();
    }
    data.x(i, 0) = c * px - s * py;
    data.x(i, 1) = s * px + c * py;
    for (std::size_t j = 0; j < options.noise_features; ++j) {
      data.x(i, 2 + j) = rng.uniform(-1.0, 1.0);
    }
    data.y[i] = inner ? 1.0 : 0.0;
  }
  return data;
}

ToySplits standardize_pair(const LabeledData& train, const LabeledData& val) {
  std::vector<std::size_t> rows(train.x.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  ToySplits out;
  out.preprocessor = Preprocessor::fit_matrix(train.x, rows, train.names);
  out.train = out.preprocessor.transform_matrix(train.x, train.y);
  out.val = out.preprocessor.transform_matrix(val.x, val.y);
  return out;
}

}  // namespace leurn
