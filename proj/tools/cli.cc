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
#include "cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "leurn/bundle.h"
#include "leurn/data.h"
#include "leurn/error.h"
#include "leurn/explain.h"
#include "leurn/hpo.h"
#include "leurn/rules.h"
#include "leurn/similarity.h"
#include "leurn/train.h"

namespace leurn {
namespace {

struct Rows {
  std::vector<RawRow> rows;
  bool has_target = false;
};

// Reads a CSV whose header is the model's raw header, with or without the
// target column.
Rows read_rows(const std::string& path, const Preprocessor& pre) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  for (const Cell& c : parse_csv_line(line)) header.push_back(c.value_or(""));
  const std::vector<std::string> full = pre.raw_header();
  std::vector<std::string> features = full;
  features.erase(features.begin() + static_cast<std::ptrdiff_t>(pre.target_column()));
  Rows out;
  if (header == full) {
    out.has_target = true;
  } else if (header != features) {
    throw Error(ErrorCode::kData, "'" + path +
                                      "' header does not match the model's columns");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<Cell> cells = parse_csv_line(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParse, "row " + std::to_string(line_no) + " has " +
                                         std::to_string(cells.size()) +
                                         " fields, expected " +
                                         std::to_string(header.size()));
    }
    out.rows.push_back(pre.complete_row(cells));
  }
  return out;
}

std::vector<double> encode_targets(const Rows& rows, const Preprocessor& pre) {
  if (!rows.has_target) {
    throw Error(ErrorCode::kData, "data has no target column '" +
                                      pre.raw_header()[pre.target_column()] + "'");
  }
  std::vector<double> y;
  for (const RawRow& r : rows.rows) y.push_back(pre.encode_target(r[pre.target_column()]));
  return y;
}

Dataset encode_rows(const Rows& rows, const Preprocessor& pre, bool with_targets) {
  Dataset ds;
  ds.task = pre.task();
  ds.num_classes = pre.task() == TaskKind::kRegression ? 1 : pre.class_labels().size();
  ds.feature_names = pre.feature_names();
  ds.features = Matrix(rows.rows.size(), pre.n_features());
  for (std::size_t i = 0; i < rows.rows.size(); ++i) {
    const auto z = pre.transform_row(rows.rows[i]);
    std::copy(z.begin(), z.end(), ds.features.row(i).begin());
  }
  if (with_targets) ds.targets = encode_targets(rows, pre);
  return ds;
}

// A row given inline as CSV cells, or by index into --data.
struct RowSource {
  std::string inline_row;
  std::string data;
  long long index = -1;
};

void add_row_options(CLI::App* cmd, RowSource& src, const std::string& suffix = "") {
  cmd->add_option("--row" + suffix, src.inline_row, "row as CSV cells (target optional)");
  cmd->add_option("--data" + suffix, src.data, "CSV file to take the row from");
  cmd->add_option("--index" + suffix, src.index, "0-based data row index");
}

RawRow resolve_row(const RowSource& src, const Preprocessor& pre) {
  if (!src.inline_row.empty()) return pre.complete_row(parse_csv_line(src.inline_row));
  if (src.data.empty() || src.index < 0) {
    throw Error(ErrorCode::kInvalidArgument, "give --row, or --data with --index");
  }
  Rows rows = read_rows(src.data, pre);
  if (static_cast<std::size_t>(src.index) >= rows.rows.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "row index " + std::to_string(src.index) + " out of range (" +
                    std::to_string(rows.rows.size()) + " rows)");
  }
  return rows.rows[static_cast<std::size_t>(src.index)];
}

std::ostream& open_out(const std::string& path, std::ostream& fallback,
                       std::unique_ptr<std::ofstream>& holder) {
  if (path.empty() || path == "-") return fallback;
  holder = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*holder) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  return *holder;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(cells[i]);
  }
  os << '\n';
}

std::string interval_text(const Interval& iv) {
  return "[" + format_double(iv.lower) + ", " + format_double(iv.upper) + ")";
}

// --- commands -------------------------------------------------------------

struct TrainArgs {
  std::string data, target, task, out;
  std::size_t depth = 2, regions = 5;
  double dropout = 0.0, lr = 1e-3;
  std::size_t epochs = 300, batch = 128, patience = 30;
  std::uint64_t seed = 0;
  bool no_index = false;
};

void cmd_train(const TrainArgs& a, std::ostream& out) {
  std::optional<TaskKind> task;
  if (!a.task.empty()) task = parse_task(a.task);
  LoadedTable loaded = load_csv(a.data, a.target, task);
  const auto labels = stratification_labels(loaded.table, loaded.schema);
  const auto tags = split(loaded.table.rows.size(), SplitRatios{},
                          mix_seed(a.seed, 1), labels);
  PreparedSplits prepared = fit_transform(loaded.table, loaded.schema, tags);
  const LeurnConfig cfg =
      make_config(prepared.preprocessor.n_features(), a.depth, a.regions, a.dropout,
                  loaded.schema.task, loaded.schema.num_classes(), mix_seed(a.seed, 2));
  TrainConfig tc;
  tc.learning_rate = a.lr;
  tc.batch_size = a.batch;
  tc.max_epochs = a.epochs;
  tc.patience = std::min(a.patience, a.epochs);
  tc.seed = mix_seed(a.seed, 3);
  FitResult fitted = fit(cfg, tc, prepared.train, prepared.val);

  ModelBundle b;
  b.config = cfg;
  b.params = fitted.params;
  b.preprocessor = prepared.preprocessor;
  b.schema = loaded.schema;
  if (!a.no_index) b.index = EmbeddingIndex::build(b.params, cfg, prepared.train);
  b.provenance.seed = a.seed;
  b.provenance.metric = std::string(metric_name(fitted.report.metric));
  b.provenance.best_val_metric = fitted.report.best_metric;
  b.provenance.best_epoch =
      fitted.report.best_epoch ? static_cast<std::int64_t>(*fitted.report.best_epoch) : -1;
  b.provenance.epochs_run = fitted.report.history.size();
  b.provenance.timestamp = build_timestamp();
  save_bundle(b, a.out);

  out << "features " << cfg.n_features << " train " << prepared.train.rows()
      << " val " << prepared.val.rows() << " test " << prepared.test.rows() << '\n';
  out << "best val " << b.provenance.metric << ' '
      << format_double(fitted.report.best_metric) << " at epoch "
      << b.provenance.best_epoch << '\n';
  if (prepared.test.rows() > 0) {
    out << "test " << b.provenance.metric << ' '
        << format_double(evaluate(b.params, cfg, prepared.test)) << '\n';
  }
  out << "saved " << a.out << '\n';
}

struct HpoArgs {
  std::string data, target, task, spec, log;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trainings, final_runs, epochs, patience;
};

void cmd_hpo(const HpoArgs& a, std::ostream& out) {
  SearchSpec spec;
  TrainConfig tc;
  if (!a.spec.empty()) {
    std::ifstream in(a.spec);
    if (!in) throw Error(ErrorCode::kIo, "cannot read '" + a.spec + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
      if (j.contains("depths")) spec.depths = j["depths"].get<std::vector<std::size_t>>();
      if (j.contains("regions")) spec.regions = j["regions"].get<std::vector<std::size_t>>();
      if (j.contains("dropouts")) spec.dropouts = j["dropouts"].get<std::vector<double>>();
      if (j.contains("trainings_per_config"))
        spec.trainings_per_config = j["trainings_per_config"].get<std::size_t>();
      if (j.contains("final_runs")) spec.final_runs = j["final_runs"].get<std::size_t>();
      if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("learning_rate")) tc.learning_rate = j["learning_rate"].get<double>();
      if (j.contains("batch_size")) tc.batch_size = j["batch_size"].get<std::size_t>();
      if (j.contains("max_epochs")) tc.max_epochs = j["max_epochs"].get<std::size_t>();
      if (j.contains("patience")) tc.patience = j["patience"].get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "search spec: " + std::string(e.what()));
    }
  }
  if (a.seed) spec.seed = *a.seed;
  if (a.trainings) spec.trainings_per_config = *a.trainings;
  if (a.final_runs) spec.final_runs = *a.final_runs;
  if (a.epochs) tc.max_epochs = *a.epochs;
  if (a.patience) tc.patience = *a.patience;
  tc.patience = std::min(tc.patience, tc.max_epochs);
  spec.normalize();

  std::optional<TaskKind> task;
  if (!a.task.empty()) task = parse_task(a.task);
  LoadedTable loaded = load_csv(a.data, a.target, task);
  TableExperiment exp(loaded.table, loaded.schema, tc, SplitRatios{},
                      mix_seed(spec.seed, 101));
  SearchResult result = search(spec, exp.metric(), exp.trial_fn());
  result.final = exp.final_protocol(result.best, spec.final_runs, mix_seed(spec.seed, 202));

  std::unique_ptr<std::ofstream> holder;
  std::ostream& log = open_out(a.log, out, holder);
  log << result.log_jsonl();
  out << "best d=" << result.best.depth << " k=" << result.best.regions
      << " r=" << format_double(result.best.dropout) << " val "
      << metric_name(result.metric) << ' ' << format_double(result.best_mean) << '\n';
  out << "test " << metric_name(result.metric) << " mean "
      << format_double(result.final->mean) << " std "
      << format_double(result.final->stddev) << " over " << spec.final_runs
      << " runs\n";
}

struct ModelArgs {
  std::string model, data, out, format = "text";
};

void cmd_predict(const ModelArgs& a, std::ostream& out) {
  const ModelBundle b = load_bundle(a.model);
  const Rows rows = read_rows(a.data, b.preprocessor);
  const Dataset ds = encode_rows(rows, b.preprocessor, false);
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_out(a.out, out, holder);
  const auto& labels = b.preprocessor.class_labels();
  std::vector<std::string> header;
  switch (b.config.task) {
    case TaskKind::kBinary:
      header = {"p_" + labels.at(1), "predicted"};
      break;
    case TaskKind::kMulticlass:
      for (const auto& l : labels) header.push_back("p_" + l);
      header.push_back("predicted");
      break;
    case TaskKind::kRegression:
      header = {"predicted"};
      break;
  }
  write_csv_row(os, header);
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    const auto p = predict(b.params, b.config, ds.row(i));
    std::vector<std::string> cells;
    for (double v : p) cells.push_back(format_double(v));
    if (b.config.task == TaskKind::kBinary) {
      cells.push_back(labels[p[0] >= 0.5 ? 1 : 0]);
    } else if (b.config.task == TaskKind::kMulticlass) {
      cells.push_back(labels[static_cast<std::size_t>(
          std::max_element(p.begin(), p.end()) - p.begin())]);
    }
    write_csv_row(os, cells);
  }
}

void cmd_evaluate(const ModelArgs& a, std::ostream& out) {
  const ModelBundle b = load_bundle(a.model);
  const Rows rows = read_rows(a.data, b.preprocessor);
  const Dataset ds = encode_rows(rows, b.preprocessor, true);
  out << metric_name(metric_for(b.config.task)) << ' '
      << format_double(evaluate(b.params, b.config, ds)) << '\n';
}

void cmd_explain(const ModelArgs& a, const RowSource& src, std::ostream& out) {
  const ModelBundle b = load_bundle(a.model);
  const ExplanationReport rep =
      report(b.params, b.config, resolve_row(src, b.preprocessor), b.preprocessor);
  if (a.format == "text") {
    out << rep.to_text();
  } else if (a.format == "structured" || a.format == "json") {
    out << rep.to_json() << '\n';
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown format '" + a.format + "'");
  }
}

void cmd_importance(const ModelArgs& a, std::ostream& out) {
  const ModelBundle b = load_bundle(a.model);
  const Dataset ds = encode_rows(read_rows(a.data, b.preprocessor), b.preprocessor, false);
  const ImportanceTable t = feature_importance(b.params, b.config, ds);
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_out(a.out, out, holder);
  write_csv_row(os, {"feature", "importance", "share"});
  for (std::size_t f = 0; f < t.scores.size(); ++f) {
    const double share = t.normalization > 0.0 ? t.scores[f] / t.normalization : 0.0;
    write_csv_row(os, {t.names[f], format_double(t.scores[f]), format_double(share)});
  }
}

void cmd_region(const ModelArgs& a, const RowSource& src, std::ostream& out) {
  const ModelBundle b = load_bundle(a.model);
  const auto z = b.preprocessor.transform_row(resolve_row(src, b.preprocessor));
  const Extraction ex = extract_region(b.params, b.config, z, &b.preprocessor);
  const auto names = b.preprocessor.feature_names();
  if (a.format == "structured" || a.format == "json") {
    nlohmann::json j;
    j["format_version"] = 1;
    j["features"] = nlohmann::json::array();
    auto side = [](double v) -> nlohmann::json {
      if (std::isfinite(v)) return v;
      return nullptr;
    };
    for (std::size_t f = 0; f < names.size(); ++f) {
      j["features"].push_back(
          {{"name", names[f]},
           {"standardized", {side(ex.region.standardized[f].lower),
                             side(ex.region.standardized[f].upper)}},
           {"raw", {side(ex.region.raw[f].lower), side(ex.region.raw[f].upper)}}});
    }
    j["bins"] = ex.region.bins;
    j["output"] = region_output(b.params, b.config, ex.region);
    out << j.dump(2) << '\n';
    return;
  }
  for (std::size_t f = 0; f < names.size(); ++f) {
    out << names[f] << ": raw " << interval_text(ex.region.raw[f]) << " standardized "
        << interval_text(ex.region.standardized[f]) << '\n';
  }
  out << "output";
  for (double v : region_output(b.params, b.config, ex.region)) out << ' ' << format_double(v);
  out << '\n';
}

struct GenerateArgs {
  std::size_t count = 10;
  std::uint64_t seed = 0;
};

void cmd_generate(const ModelArgs& a, const RowSource& src, const GenerateArgs& g,
                  std::ostream& out) {
  const ModelBundle b = load_bundle(a.model);
  const Preprocessor& pre = b.preprocessor;
  const auto z = pre.transform_row(resolve_row(src, pre));
  const Extraction ex = extract_region(b.params, b.config, z, &pre);
  const auto bounds = pre.data_bounds();
  Rng rng(g.seed);
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_out(a.out, out, holder);
  std::vector<std::string> header = pre.raw_header();
  header.erase(header.begin() + static_cast<std::ptrdiff_t>(pre.target_column()));
  write_csv_row(os, header);
  for (std::size_t i = 0; i < g.count; ++i) {
    const GeneratedSample s = generate(b.params, b.config, ex.region, rng, bounds, &pre);
    std::vector<std::string> cells = pre.inverse_row(s.model);
    // Continuous cells from the exact raw draw.
    std::size_t pos = 0;
    for (const ColumnEncoding& col : pre.columns()) {
      if (col.kind == ColumnKind::kContinuous && !col.dropped) {
        cells[pos] = format_double(s.raw[col.first_feature]);
      }
      ++pos;
    }
    write_csv_row(os, cells);
  }
}

void cmd_similar(const ModelArgs& a, const RowSource& ra, const RowSource& rb,
                 std::optional<double> gamma, std::ostream& out) {
  const ModelBundle b = load_bundle(a.model);
  const auto za = b.preprocessor.transform_row(resolve_row(ra, b.preprocessor));
  const auto zb = b.preprocessor.transform_row(resolve_row(rb, b.preprocessor));
  const double g = gamma.value_or(1.0 / static_cast<double>(b.config.embedding_size()));
  out << "similarity "
      << format_double(rbf_similarity(embed(b.params, b.config, za),
                                      embed(b.params, b.config, zb), g))
      << '\n';
}

void cmd_confidence(const ModelArgs& a, const std::string& index_data,
                    std::ostream& out) {
  const ModelBundle b = load_bundle(a.model);
  std::optional<EmbeddingIndex> index = b.index;
  if (!index_data.empty()) {
    const Dataset train =
        encode_rows(read_rows(index_data, b.preprocessor), b.preprocessor, false);
    index = EmbeddingIndex::build(b.params, b.config, train);
  }
  if (!index) {
    throw Error(ErrorCode::kMissingIndex,
                "bundle has no embedding index; build one with --index-data <csv> "
                "or retrain without --no-index");
  }
  const Dataset ds = encode_rows(read_rows(a.data, b.preprocessor), b.preprocessor, false);
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_out(a.out, out, holder);
  write_csv_row(os, {"row", "confidence"});
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    write_csv_row(os, {std::to_string(i),
                       format_double(confidence(b.params, b.config, *index, ds.row(i)))});
  }
}

struct ToyArgs {
  std::string kind = "halfmoon", out;
  HalfMoonOptions opts;
};

void cmd_toydata(const ToyArgs& a, std::ostream& out) {
  if (a.kind != "halfmoon") {
    throw Error(ErrorCode::kInvalidArgument, "unknown toy dataset '" + a.kind + "'");
  }
  const LabeledData d = half_moon(a.opts);
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_out(a.out, out, holder);
  std::vector<std::string> header = d.names;
  header.push_back("label");
  write_csv_row(os, header);
  for (std::size_t i = 0; i < d.x.rows(); ++i) {
    std::vector<std::string> cells;
    for (double v : d.x.row(i)) cells.push_back(format_double(v));
    cells.push_back(format_double(d.y[i]));
    write_csv_row(os, cells);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"leurn: rule-based tabular models"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "fit a model and save a bundle");
  c_train->add_option("--data", train.data)->required();
  c_train->add_option("--target", train.target)->required();
  c_train->add_option("--task", train.task, "binary|multiclass|regression");
  c_train->add_option("--d", train.depth, "rule layers");
  c_train->add_option("--k", train.regions, "qtanh regions");
  c_train->add_option("--r", train.dropout, "dropout");
  c_train->add_option("--seed", train.seed);
  c_train->add_option("--lr", train.lr);
  c_train->add_option("--epochs", train.epochs);
  c_train->add_option("--batch", train.batch);
  c_train->add_option("--patience", train.patience);
  c_train->add_option("--out", train.out)->required();
  c_train->add_flag("--no-index", train.no_index, "do not store an embedding index");

  HpoArgs hpo;
  auto* c_hpo = app.add_subcommand("hpo", "sequential search and final protocol");
  c_hpo->add_option("--data", hpo.data)->required();
  c_hpo->add_option("--target", hpo.target)->required();
  c_hpo->add_option("--task", hpo.task);
  c_hpo->add_option("--spec", hpo.spec, "JSON search spec");
  c_hpo->add_option("--seed", hpo.seed);
  c_hpo->add_option("--trainings", hpo.trainings);
  c_hpo->add_option("--runs", hpo.final_runs);
  c_hpo->add_option("--epochs", hpo.epochs);
  c_hpo->add_option("--patience", hpo.patience);
  c_hpo->add_option("--log", hpo.log, "search log (JSON lines)");

  ModelArgs m;
  RowSource row, row_b;
  GenerateArgs gen;
  std::optional<double> gamma;
  std::string index_data;

  auto* c_predict = app.add_subcommand("predict", "per-row outputs");
  c_predict->add_option("--model", m.model)->required();
  c_predict->add_option("--data", m.data)->required();
  c_predict->add_option("--out", m.out);

  auto* c_eval = app.add_subcommand("evaluate", "task metric on a labelled file");
  c_eval->add_option("--model", m.model)->required();
  c_eval->add_option("--data", m.data)->required();

  auto* c_explain = app.add_subcommand("explain", "rule-level explanation of one row");
  c_explain->add_option("--model", m.model)->required();
  add_row_options(c_explain, row);
  c_explain->add_option("--format", m.format, "text|structured");

  auto* c_imp = app.add_subcommand("importance", "global feature importance");
  c_imp->add_option("--model", m.model)->required();
  c_imp->add_option("--data", m.data)->required();
  c_imp->add_option("--out", m.out);

  auto* c_region = app.add_subcommand("region", "decision region of one row");
  c_region->add_option("--model", m.model)->required();
  add_row_options(c_region, row);
  c_region->add_option("--format", m.format, "text|structured");

  auto* c_gen = app.add_subcommand("generate", "sample rows from a row's region");
  c_gen->add_option("--model", m.model)->required();
  add_row_options(c_gen, row);
  c_gen->add_option("--count", gen.count);
  c_gen->add_option("--seed", gen.seed);
  c_gen->add_option("--out", m.out);

  auto* c_sim = app.add_subcommand("similar", "embedding similarity of two rows");
  c_sim->add_option("--model", m.model)->required();
  add_row_options(c_sim, row, "-a");
  add_row_options(c_sim, row_b, "-b");
  c_sim->add_option("--gamma", gamma);

  auto* c_conf = app.add_subcommand("confidence", "per-row confidence");
  c_conf->add_option("--model", m.model)->required();
  c_conf->add_option("--data", m.data)->required();
  c_conf->add_option("--index-data", index_data, "build the index from this CSV");
  c_conf->add_option("--out", m.out);

  ToyArgs toy;
  auto* c_toy = app.add_subcommand("toydata", "synthetic datasets");
  c_toy->add_option("--kind", toy.kind);
  c_toy->add_option("--n", toy.opts.n);
  c_toy->add_option("--noise", toy.opts.noise);
  c_toy->add_option("--rotation", toy.opts.rotation_degrees);
  c_toy->add_option("--noise-features", toy.opts.noise_features);
  c_toy->add_option("--seed", toy.opts.seed);
  c_toy->add_option("--out", toy.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (c_train->parsed()) cmd_train(train, out);
    else if (c_hpo->parsed()) cmd_hpo(hpo, out);
    else if (c_predict->parsed()) cmd_predict(m, out);
    else if (c_eval->parsed()) cmd_evaluate(m, out);
    else if (c_explain->parsed()) cmd_explain(m, row, out);
    else if (c_imp->parsed()) cmd_importance(m, out);
    else if (c_region->parsed()) cmd_region(m, row, out);
    else if (c_gen->parsed()) cmd_generate(m, row, gen, out);
    else if (c_sim->parsed()) cmd_similar(m, row, row_b, gamma, out);
    else if (c_conf->parsed()) cmd_confidence(m, index_data, out);
    else if (c_toy->parsed()) cmd_toydata(toy, out);
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace leurn
