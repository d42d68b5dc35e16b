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
#include "leurn/explain.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "leurn/error.h"

namespace leurn {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string signed_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.6g", v);
  return buf;
}

std::string render_rule(const RuleTraceEntry& e, const Preprocessor& pre) {
  const EncodedFeature& feat = pre.features().at(e.feature);
  if (feat.one_hot) {
    const std::string column = pre.columns().at(feat.source_column).name;
    const bool has_one = e.bounds.contains(1.0);
    const bool has_zero = e.bounds.contains(0.0);
    if (has_one && !has_zero) return column + " = " + feat.level;
    if (has_zero && !has_one) return column + " != " + feat.level;
    return feat.name + ": any";
  }
  const double lo = pre.to_raw(e.feature, e.bounds.lower);
  const double hi = pre.to_raw(e.feature, e.bounds.upper);
  std::string out = feat.name + ": ";
  if (std::isfinite(lo)) out += num(lo) + " <= ";
  out += "X";
  if (std::isfinite(hi)) out += " < " + num(hi);
  if (!std::isfinite(lo) && !std::isfinite(hi)) out += " any";
  return out;
}

std::string key(std::size_t layer, std::size_t feature) {
  return std::to_string(layer) + ":" + std::to_string(feature);
}

nlohmann::json interval_json(const Interval& iv) {
  auto side = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  return {{"lower", side(iv.lower)}, {"upper", side(iv.upper)}};
}

nlohmann::json rule_json(const ReportRule& r) {
  return {{"layer", r.layer},
          {"feature", r.feature},
          {"name", r.feature_name},
          {"rule", r.text},
          {"standardized", interval_json(r.standardized)},
          {"raw", interval_json(r.raw)},
          {"category_bias", r.category_bias},
          {"contribution", r.contribution},
          {"absorbed", r.absorbed}};
}

}  // namespace

std::vector<Contribution> contributions(const LeurnParams& params,
                                        const LeurnConfig& cfg,
                                        const ForwardTrace& trace,
                                        std::span<const RuleTraceEntry> rules) {
  const std::size_t n = cfg.n_features;
  const std::size_t width = cfg.embedding_size();
  if (trace.embedding.size() != width || trace.n_features != n ||
      trace.depth != cfg.depth) {
    throw Error(ErrorCode::kShapeMismatch, "contributions: trace does not match config");
  }
  if (rules.size() != width) {
    throw Error(ErrorCode::kShapeMismatch, "contributions: rule list does not match trace");
  }
  params.validate(cfg);

  std::vector<Contribution> out;
  auto emit = [&](const Matrix& w, std::span<const double> bias,
                  std::size_t sources, TargetKind kind, std::size_t layer) {
    std::size_t recipients = 0;
    for (std::size_t r = 0; r < sources; ++r) {
      if (!rules[r].redundant) ++recipients;
    }
    const bool all = recipients == 0;
    if (all) recipients = sources;
    for (std::size_t t = 0; t < w.cols(); ++t) {
      const double share = bias[t] / static_cast<double>(recipients);
      for (std::size_t r = 0; r < sources; ++r) {
        Contribution c;
        c.source_layer = r / n;
        c.source_feature = r % n;
        c.target = kind;
        c.target_layer = layer;
        c.target_index = t;
        c.value = w(r, t) * trace.embedding[r];
        c.bias_share = (all || !rules[r].redundant) ? share : 0.0;
        out.push_back(c);
      }
    }
  };
  for (std::size_t i = 0; i < cfg.depth; ++i) {
    const RuleLayer& layer = params.rule_layers[i];
    emit(layer.weights, layer.bias, (i + 1) * n, TargetKind::kThreshold, i + 1);
  }
  emit(params.head_weights, params.head_bias, width, TargetKind::kScore, 0);
  return out;
}

std::vector<Contribution> merge_redundant(std::span<const Contribution> contribs,
                                          const SimplifiedTrace& simplified,
                                          std::size_t n_features) {
  const auto& entries = simplified.entries;
  auto entry_of = [&](std::size_t layer, std::size_t feature) -> std::size_t {
    const std::size_t idx = layer * n_features + feature;
    if (idx >= entries.size()) {
      throw Error(ErrorCode::kShapeMismatch, "merge_redundant: source outside trace");
    }
    return idx;
  };
  using Key = std::tuple<std::size_t, std::size_t, int, std::size_t, std::size_t>;
  std::map<Key, std::size_t> position;
  std::vector<Contribution> out;
  for (const Contribution& c : contribs) {
    if (entries[entry_of(c.source_layer, c.source_feature)].redundant) continue;
    position[{c.source_layer, c.source_feature, static_cast<int>(c.target),
              c.target_layer, c.target_index}] = out.size();
    out.push_back(c);
  }
  for (const Contribution& c : contribs) {
    std::size_t idx = entry_of(c.source_layer, c.source_feature);
    if (!entries[idx].redundant) continue;
    std::size_t hops = 0;
    while (entries[idx].redundant) {
      if (!entries[idx].absorbed_by || *entries[idx].absorbed_by >= entries.size() ||
          ++hops > entries.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "merge_redundant: dangling absorption for rule " +
                        key(entries[idx].layer, entries[idx].feature));
      }
      idx = *entries[idx].absorbed_by;
    }
    const auto it = position.find({entries[idx].layer, entries[idx].feature,
                                   static_cast<int>(c.target), c.target_layer,
                                   c.target_index});
    if (it == position.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "merge_redundant: absorbing rule " +
                      key(entries[idx].layer, entries[idx].feature) +
                      " has no term for the same target");
    }
    out[it->second].value += c.value;
    out[it->second].bias_share += c.bias_share;
  }
  return out;
}

double ExplanationReport::contribution_total() const {
  double sum = 0.0;
  for (const auto& r : layer0_rules) sum += r.contribution;
  for (const auto& r : derived_rules) sum += r.contribution;
  return sum;
}

ExplanationReport report(const LeurnParams& params, const LeurnConfig& cfg,
                         const RawRow& x_raw, const Preprocessor& preprocessor) {
  if (preprocessor.n_features() != cfg.n_features) {
    throw Error(ErrorCode::kShapeMismatch,
                "report: preprocessor does not match the model");
  }
  const std::vector<double> z = preprocessor.transform_row(x_raw);
  const std::size_t n = cfg.n_features;
  const ForwardTrace trace = forward(params, cfg, z);
  const Extraction ex = extract_region(params, cfg, z, &preprocessor);
  const std::vector<Interval> bounds = preprocessor.data_bounds();
  const SimplifiedTrace simplified = simplify(ex.trace, bounds);
  const std::vector<Contribution> merged = merge_redundant(
      contributions(params, cfg, trace, simplified.entries), simplified, n);

  ExplanationReport rep;
  rep.task = cfg.task;
  rep.prediction = output_activation(cfg.task, trace.logits);
  if (cfg.task == TaskKind::kMulticlass) {
    rep.output_index = static_cast<std::size_t>(
        std::max_element(trace.logits.begin(), trace.logits.end()) -
        trace.logits.begin());
  }
  rep.logit = trace.logits[rep.output_index];
  const auto& labels = preprocessor.class_labels();
  switch (cfg.task) {
    case TaskKind::kBinary:
      rep.output_label = labels.size() == 2 ? labels[1] : "1";
      break;
    case TaskKind::kMulticlass:
      rep.output_label = rep.output_index < labels.size()
                             ? labels[rep.output_index]
                             : std::to_string(rep.output_index);
      break;
    case TaskKind::kRegression:
      rep.output_label = "value";
      break;
  }

  std::vector<std::string> texts(simplified.entries.size());
  for (std::size_t t = 0; t < texts.size(); ++t) {
    texts[t] = render_rule(simplified.entries[t], preprocessor);
  }
  std::map<std::pair<std::size_t, std::size_t>, double> score;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<ThresholdSource>> sources;
  std::map<std::pair<std::size_t, std::size_t>, double> shares;
  for (const Contribution& c : merged) {
    const std::size_t src = c.source_layer * n + c.source_feature;
    if (c.target == TargetKind::kScore) {
      if (c.target_index != rep.output_index) continue;
      score[{c.source_layer, c.source_feature}] += c.total();
      if (c.bias_share != 0.0) rep.score_bias_per_rule = c.bias_share;
    } else {
      const auto k = std::make_pair(c.target_layer, c.target_index);
      sources[k].push_back({texts[src], c.value});
      if (c.bias_share != 0.0) shares[k] = c.bias_share;
    }
  }
  rep.score_bias = params.head_bias[rep.output_index];

  for (std::size_t t : simplified.kept) {
    const RuleTraceEntry& e = simplified.entries[t];
    ReportRule r;
    r.layer = e.layer;
    r.feature = e.feature;
    r.feature_name = preprocessor.features()[e.feature].name;
    r.text = texts[t];
    r.standardized = e.bounds;
    r.raw = {preprocessor.to_raw(e.feature, e.bounds.lower),
             preprocessor.to_raw(e.feature, e.bounds.upper)};
    r.category_bias = e.category_bias;
    r.contribution = score[{e.layer, e.feature}];
    for (const RuleTraceEntry& other : simplified.entries) {
      if (!other.redundant) continue;
      std::size_t idx = other.layer * n + other.feature;
      while (simplified.entries[idx].redundant) idx = *simplified.entries[idx].absorbed_by;
      if (idx == t) r.absorbed.push_back(key(other.layer, other.feature));
    }
    (e.layer == 0 ? rep.layer0_rules : rep.derived_rules).push_back(std::move(r));
  }
  for (std::size_t layer = 1; layer <= cfg.depth; ++layer) {
    for (std::size_t f = 0; f < n; ++f) {
      const std::size_t t = layer * n + f;
      ThresholdProvenance p;
      p.layer = layer;
      p.feature = f;
      p.tau = trace.tau[t];
      p.rule = texts[t];
      p.redundant = simplified.entries[t].redundant;
      p.bias = params.rule_layers[layer - 1].bias[f];
      p.bias_share = shares[{layer, f}];
      p.sources = sources[{layer, f}];
      rep.thresholds.push_back(std::move(p));
    }
  }
  return rep;
}

std::string ExplanationReport::to_text() const {
  std::ostringstream os;
  os << "output: " << output_label << " (logit " << num(logit)
     << ", prediction";
  for (double p : prediction) os << ' ' << num(p);
  os << ")\n";
  if (task == TaskKind::kBinary) {
    os << "positive contributions favor '" << output_label << "'\n";
  }
  auto line = [&](const ReportRule& r) {
    os << "  " << r.text << "  [contribution " << signed_num(r.contribution)
       << "]";
    if (r.category_bias) os << "  (category bias)";
    os << '\n';
  };
  os << "layer 0 rules\n";
  for (const auto& r : layer0_rules) line(r);
  os << "derived rules\n";
  for (const auto& r : derived_rules) {
    os << "  layer " << r.layer << ' ';
    line(r);
    for (const auto& p : thresholds) {
      if (p.layer != r.layer || p.feature != r.feature) continue;
      os << "      threshold " << num(p.tau) << " =";
      for (const auto& s : p.sources) {
        if (s.value == 0.0) continue;
        os << ' ' << signed_num(s.value) << " (" << s.rule << ")";
      }
      os << " bias " << signed_num(p.bias) << '\n';
    }
  }
  os << "score contributions\n";
  for (const auto* rules : {&layer0_rules, &derived_rules}) {
    for (const auto& r : *rules) {
      if (r.category_bias) continue;
      os << "  " << r.text << "  " << signed_num(r.contribution) << '\n';
    }
  }
  bool any_bias = false;
  for (const auto* rules : {&layer0_rules, &derived_rules}) {
    for (const auto& r : *rules) any_bias = any_bias || r.category_bias;
  }
  if (any_bias) {
    os << "  category bias\n";
    for (const auto* rules : {&layer0_rules, &derived_rules}) {
      for (const auto& r : *rules) {
        if (r.category_bias) {
          os << "    " << r.text << "  " << signed_num(r.contribution) << '\n';
        }
      }
    }
  }
  os << "  bias per rule " << signed_num(score_bias_per_rule) << " (total "
     << signed_num(score_bias) << ")\n";
  os << "  sum " << signed_num(contribution_total()) << " = logit\n";
  return os.str();
}

std::string ExplanationReport::to_json() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["task"] = std::string(task_name(task));
  j["output_index"] = output_index;
  j["output_label"] = output_label;
  j["logit"] = logit;
  j["prediction"] = prediction;
  j["layer0_rules"] = nlohmann::json::array();
  for (const auto& r : layer0_rules) j["layer0_rules"].push_back(rule_json(r));
  j["derived_rules"] = nlohmann::json::array();
  for (const auto& r : derived_rules) j["derived_rules"].push_back(rule_json(r));
  j["thresholds"] = nlohmann::json::array();
  for (const auto& p : thresholds) {
    nlohmann::json srcs = nlohmann::json::array();
    for (const auto& s : p.sources) srcs.push_back({{"rule", s.rule}, {"value", s.value}});
    j["thresholds"].push_back({{"layer", p.layer},
                               {"feature", p.feature},
                               {"tau", p.tau},
                               {"rule", p.rule},
                               {"redundant", p.redundant},
                               {"bias", p.bias},
                               {"bias_share", p.bias_share},
                               {"sources", srcs}});
  }
  j["score_bias"] = score_bias;
  j["score_bias_per_rule"] = score_bias_per_rule;
  j["contribution_total"] = contribution_total();
  return j.dump(2);
}

ImportanceTable feature_importance(const LeurnParams& params,
                                   const LeurnConfig& cfg, const Dataset& data) {
  if (data.rows() == 0) throw Error(ErrorCode::kData, "feature_importance: empty dataset");
  if (data.n_features() != cfg.n_features) {
    throw Error(ErrorCode::kShapeMismatch, "feature_importance: width mismatch");
  }
  const std::size_t n = cfg.n_features;
  ImportanceTable table;
  table.names = data.feature_names;
  if (table.names.size() != n) {
    table.names.clear();
    for (std::size_t f = 0; f < n; ++f) table.names.push_back("x" + std::to_string(f));
  }
  table.scores.assign(n, 0.0);
  ForwardTrace trace;
  std::vector<double> per_feature(n);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    forward_into(params, cfg, data.row(i), {}, trace);
    std::size_t o = 0;
    if (cfg.task == TaskKind::kMulticlass) {
      o = static_cast<std::size_t>(
          std::max_element(trace.logits.begin(), trace.logits.end()) -
          trace.logits.begin());
    }
    std::fill(per_feature.begin(), per_feature.end(), 0.0);
    for (std::size_t r = 0; r < cfg.embedding_size(); ++r) {
      per_feature[r % n] += params.head_weights(r, o) * trace.embedding[r];
    }
    for (std::size_t f = 0; f < n; ++f) table.scores[f] += std::abs(per_feature[f]);
  }
  for (double& s : table.scores) {
    s /= static_cast<double>(data.rows());
    table.normalization += s;
  }
  return table;
}

std::vector<bool> feature_selection(const LeurnParams& params,
                                    const LeurnConfig& cfg, std::size_t layer,
                                    double tol) {
  if (layer > cfg.depth) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature_selection: layer " + std::to_string(layer) +
                    " out of range 0.." + std::to_string(cfg.depth));
  }
  if (!(tol >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "feature_selection: tol < 0");
  const Matrix& w =
      layer == cfg.depth ? params.head_weights : params.rule_layers[layer].weights;
  const std::size_t n = cfg.n_features;
  std::vector<double> max_abs(n, 0.0);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t c = 0; c < w.cols(); ++c) {
      max_abs[r % n] = std::max(max_abs[r % n], std::abs(w(r, c)));
    }
  }
  std::vector<bool> selected(n);
  for (std::size_t f = 0; f < n; ++f) selected[f] = max_abs[f] > tol;
  return selected;
}

}  // namespace leurn
