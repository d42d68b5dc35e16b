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
#ifndef LEURN_EXPLAIN_H_
#define LEURN_EXPLAIN_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "leurn/data.h"
#include "leurn/model.h"
#include "leurn/rules.h"

namespace leurn {

enum class TargetKind { kThreshold, kScore };

// value + bias_share of every term aimed at one target sums to the target.
struct Contribution {
  // Embedding entry (rule and response) the term comes from.
  std::size_t source_layer = 0;
  std::size_t source_feature = 0;
  TargetKind target = TargetKind::kScore;
  // Threshold targets: layer of tau and feature. Score targets: layer is
  // unused and index is the output unit.
  std::size_t target_layer = 0;
  std::size_t target_index = 0;
  // weight x embedding.
  double value = 0.0;
  // Equal share of the target's bias; zero for redundant sources.
  double bias_share = 0.0;

  double total() const { return value + bias_share; }
};

// Terms of every FC layer for one eval-mode trace. `rules` is the trace's
// rule list (from extract_region or simplify); it decides which sources
// receive bias shares.
std::vector<Contribution> contributions(const LeurnParams& params,
                                        const LeurnConfig& cfg,
                                        const ForwardTrace& trace,
                                        std::span<const RuleTraceEntry> rules);

// Moves each redundant source's terms onto its absorbing rule.
std::vector<Contribution> merge_redundant(std::span<const Contribution> contribs,
                                          const SimplifiedTrace& simplified,
                                          std::size_t n_features);

struct ReportRule {
  std::size_t layer = 0;
  std::size_t feature = 0;
  std::string feature_name;
  std::string text;
  Interval standardized;
  Interval raw;
  bool category_bias = false;
  // Merged score contribution including the bias share.
  double contribution = 0.0;
  // "layer:feature" keys of absorbed redundant rules.
  std::vector<std::string> absorbed;
};

struct ThresholdSource {
  std::string rule;
  double value = 0.0;
};

struct ThresholdProvenance {
  std::size_t layer = 0;
  std::size_t feature = 0;
  double tau = 0.0;
  std::string rule;
  bool redundant = false;
  double bias = 0.0;
  double bias_share = 0.0;
  std::vector<ThresholdSource> sources;
};

struct ExplanationReport {
  TaskKind task = TaskKind::kBinary;
  std::size_t output_index = 0;
  std::string output_label;
  double logit = 0.0;
  std::vector<double> prediction;
  std::vector<ReportRule> layer0_rules;
  std::vector<ReportRule> derived_rules;
  std::vector<ThresholdProvenance> thresholds;
  double score_bias = 0.0;
  double score_bias_per_rule = 0.0;

  // Sum of the contribution column.
  double contribution_total() const;
  std::string to_text() const;
  std::string to_json() const;
};

ExplanationReport report(const LeurnParams& params, const LeurnConfig& cfg,
                         const RawRow& x_raw, const Preprocessor& preprocessor);

struct ImportanceTable {
  std::vector<std::string> names;
  std::vector<double> scores;
  // Sum of scores; scores / normalization gives shares.
  double normalization = 0.0;
};

ImportanceTable feature_importance(const LeurnParams& params,
                                   const LeurnConfig& cfg, const Dataset& data);

// `layer` indexes FC layers: 0..depth-1 are rule layers, depth is the head.
std::vector<bool> feature_selection(const LeurnParams& params,
                                    const LeurnConfig& cfg, std::size_t layer,
                                    double tol);

}  // namespace leurn

#endif  // LEURN_EXPLAIN_H_
