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
#include "leurn/bundle.h"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "leurn/error.h"

namespace leurn {
namespace {

using nlohmann::json;

json matrix_json(const Matrix& m) {
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

Matrix matrix_from(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != rows * cols) {
    throw Error(ErrorCode::kShapeMismatch,
                "bundle matrix has " + std::to_string(data.size()) +
                    " entries, expected " + std::to_string(rows * cols));
  }
  Matrix m(rows, cols);
  std::copy(data.begin(), data.end(), m.data().begin());
  return m;
}

std::string kind_name(ColumnKind k) {
  switch (k) {
    case ColumnKind::kContinuous: return "continuous";
    case ColumnKind::kCategorical: return "categorical";
    case ColumnKind::kTarget: return "target";
  }
  return "continuous";
}

ColumnKind parse_kind(const std::string& s) {
  if (s == "continuous") return ColumnKind::kContinuous;
  if (s == "categorical") return ColumnKind::kCategorical;
  if (s == "target") return ColumnKind::kTarget;
  throw Error(ErrorCode::kParse, "unknown column kind '" + s + "'");
}

json preprocessor_json(const Preprocessor& p) {
  const auto st = p.state();
  json features = json::array();
  for (const auto& f : st.features) {
    features.push_back({{"name", f.name},
                        {"source_column", f.source_column},
                        {"one_hot", f.one_hot},
                        {"level", f.level},
                        {"mean", f.mean},
                        {"stddev", f.stddev},
                        {"data_min", f.data_min},
                        {"data_max", f.data_max}});
  }
  json columns = json::array();
  for (const auto& c : st.columns) {
    columns.push_back({{"source_column", c.source_column},
                       {"name", c.name},
                       {"kind", kind_name(c.kind)},
                       {"dropped", c.dropped},
                       {"impute_value", c.impute_value},
                       {"impute_level", c.impute_level},
                       {"levels", c.levels},
                       {"first_feature", c.first_feature},
                       {"feature_count", c.feature_count}});
  }
  return {{"features", features},
          {"columns", columns},
          {"task", std::string(task_name(st.task))},
          {"class_labels", st.class_labels},
          {"target_column", st.target_column},
          {"raw_width", st.raw_width},
          {"raw_header", st.raw_header}};
}

Preprocessor preprocessor_from(const json& j) {
  Preprocessor::State st;
  for (const auto& f : j.at("features")) {
    EncodedFeature e;
    e.name = f.at("name").get<std::string>();
    e.source_column = f.at("source_column").get<std::size_t>();
    e.one_hot = f.at("one_hot").get<bool>();
    e.level = f.at("level").get<std::string>();
    e.mean = f.at("mean").get<double>();
    e.stddev = f.at("stddev").get<double>();
    e.data_min = f.at("data_min").get<double>();
    e.data_max = f.at("data_max").get<double>();
    if (!(e.stddev > 0.0)) throw Error(ErrorCode::kParse, "bundle feature with stddev <= 0");
    st.features.push_back(std::move(e));
  }
  for (const auto& c : j.at("columns")) {
    ColumnEncoding e;
    e.source_column = c.at("source_column").get<std::size_t>();
    e.name = c.at("name").get<std::string>();
    e.kind = parse_kind(c.at("kind").get<std::string>());
    e.dropped = c.at("dropped").get<bool>();
    e.impute_value = c.at("impute_value").get<double>();
    e.impute_level = c.at("impute_level").get<std::string>();
    e.levels = c.at("levels").get<std::vector<std::string>>();
    e.first_feature = c.at("first_feature").get<std::size_t>();
    e.feature_count = c.at("feature_count").get<std::size_t>();
    if (e.first_feature + e.feature_count > st.features.size()) {
      throw Error(ErrorCode::kShapeMismatch, "bundle column '" + e.name +
                                                 "' points past the feature list");
    }
    st.columns.push_back(std::move(e));
  }
  st.task = parse_task(j.at("task").get<std::string>());
  st.class_labels = j.at("class_labels").get<std::vector<std::string>>();
  st.target_column = j.at("target_column").get<std::size_t>();
  st.raw_width = j.at("raw_width").get<std::size_t>();
  st.raw_header = j.at("raw_header").get<std::vector<std::string>>();
  if (st.raw_header.size() != st.raw_width || st.target_column >= st.raw_width) {
    throw Error(ErrorCode::kShapeMismatch, "bundle raw header does not match its width");
  }
  return Preprocessor::from_state(std::move(st));
}

}  // namespace

std::int64_t build_timestamp() {
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return v;
  }
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string bundle_to_json(const ModelBundle& b) {
  json layers = json::array();
  for (const auto& l : b.params.rule_layers) {
    layers.push_back({{"weights", matrix_json(l.weights)}, {"bias", l.bias}});
  }
  json schema_columns = json::array();
  for (const auto& c : b.schema.columns) {
    schema_columns.push_back(
        {{"name", c.name}, {"kind", kind_name(c.kind)}, {"levels", c.levels}});
  }
  json j;
  j["format_version"] = kBundleFormatVersion;
  j["config"] = {{"n_features", b.config.n_features},
                 {"depth", b.config.depth},
                 {"regions", b.config.regions},
                 {"dropout", b.config.dropout},
                 {"task", std::string(task_name(b.config.task))},
                 {"output_dim", b.config.output_dim},
                 {"seed", b.config.seed}};
  j["params"] = {{"tau0", b.params.tau0},
                 {"rule_layers", layers},
                 {"head_weights", matrix_json(b.params.head_weights)},
                 {"head_bias", b.params.head_bias}};
  j["preprocessor"] = preprocessor_json(b.preprocessor);
  j["schema"] = {{"columns", schema_columns},
                 {"target_index", b.schema.target_index},
                 {"task", std::string(task_name(b.schema.task))},
                 {"class_labels", b.schema.class_labels}};
  if (b.index) {
    j["index"] = {{"gamma", b.index->gamma},
                  {"embeddings", matrix_json(b.index->embeddings)}};
  } else {
    j["index"] = nullptr;
  }
  j["provenance"] = {{"seed", b.provenance.seed},
                     {"metric", b.provenance.metric},
                     {"best_val_metric", b.provenance.best_val_metric},
                     {"best_epoch", b.provenance.best_epoch},
                     {"epochs_run", b.provenance.epochs_run},
                     {"timestamp", b.provenance.timestamp}};
  return j.dump(1);
}

ModelBundle bundle_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bundle is not valid JSON: ") + e.what());
  }
  ModelBundle b;
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kBundleFormatVersion) {
      throw Error(ErrorCode::kVersion,
                  "bundle format_version " + std::to_string(version) +
                      " is not supported (expected " +
                      std::to_string(kBundleFormatVersion) + ")");
    }
    const json& c = j.at("config");
    b.config.n_features = c.at("n_features").get<std::size_t>();
    b.config.depth = c.at("depth").get<std::size_t>();
    b.config.regions = c.at("regions").get<std::size_t>();
    b.config.dropout = c.at("dropout").get<double>();
    b.config.task = parse_task(c.at("task").get<std::string>());
    b.config.output_dim = c.at("output_dim").get<std::size_t>();
    b.config.seed = c.at("seed").get<std::uint64_t>();
    b.config.validate();

    const json& p = j.at("params");
    b.params.tau0 = p.at("tau0").get<std::vector<double>>();
    for (const auto& l : p.at("rule_layers")) {
      b.params.rule_layers.push_back(
          {matrix_from(l.at("weights")), l.at("bias").get<std::vector<double>>()});
    }
    b.params.head_weights = matrix_from(p.at("head_weights"));
    b.params.head_bias = p.at("head_bias").get<std::vector<double>>();
    b.params.validate(b.config);

    b.preprocessor = preprocessor_from(j.at("preprocessor"));
    if (b.preprocessor.n_features() != b.config.n_features) {
      throw Error(ErrorCode::kShapeMismatch,
                  "bundle preprocessor width does not match the model");
    }
    const json& s = j.at("schema");
    for (const auto& col : s.at("columns")) {
      b.schema.columns.push_back({col.at("name").get<std::string>(),
                                  parse_kind(col.at("kind").get<std::string>()),
                                  col.at("levels").get<std::vector<std::string>>()});
    }
    b.schema.target_index = s.at("target_index").get<std::size_t>();
    b.schema.task = parse_task(s.at("task").get<std::string>());
    b.schema.class_labels = s.at("class_labels").get<std::vector<std::string>>();

    const json& idx = j.at("index");
    if (!idx.is_null()) {
      EmbeddingIndex index;
      index.gamma = idx.at("gamma").get<double>();
      index.embeddings = matrix_from(idx.at("embeddings"));
      if (index.embeddings.cols() != b.config.embedding_size() || !(index.gamma > 0.0)) {
        throw Error(ErrorCode::kShapeMismatch,
                    "bundle index does not match the model embedding size");
      }
      b.index = std::move(index);
    }
    const json& pv = j.at("provenance");
    b.provenance.seed = pv.at("seed").get<std::uint64_t>();
    b.provenance.metric = pv.at("metric").get<std::string>();
    b.provenance.best_val_metric = pv.at("best_val_metric").get<double>();
    b.provenance.best_epoch = pv.at("best_epoch").get<std::int64_t>();
    b.provenance.epochs_run = pv.at("epochs_run").get<std::size_t>();
    b.provenance.timestamp = pv.at("timestamp").get<std::int64_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("corrupt bundle field: ") + e.what());
  }
  return b;
}

void save_bundle(const ModelBundle& bundle, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << bundle_to_json(bundle) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

ModelBundle load_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return bundle_from_json(buf.str());
}

}  // namespace leurn
