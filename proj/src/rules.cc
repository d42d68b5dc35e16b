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
#include "leurn/rules.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "leurn/error.h"

namespace leurn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bound {
  Interval interval{-kInf, kInf};
  std::optional<std::size_t> lower_source;
  std::optional<std::size_t> upper_source;
};

double gap(double outer, double inner) {
  if (std::isinf(outer) || std::isinf(inner)) return kInf;
  return std::abs(outer - inner);
}

// Walks the trace in order, tightening per-feature bounds and marking the
// entries that tighten nothing.
std::vector<Bound> mark_redundancy(std::vector<RuleTraceEntry>& trace,
                                   std::size_t n_features) {
  std::vector<Bound> bounds(n_features);
  for (std::size_t t = 0; t < trace.size(); ++t) {
    RuleTraceEntry& e = trace[t];
    if (e.feature >= n_features) {
      throw Error(ErrorCode::kShapeMismatch, "rule trace feature out of range");
    }
    Bound& b = bounds[e.feature];
    const bool tightens_lower = e.bounds.lower > b.interval.lower;
    const bool tightens_upper = e.bounds.upper < b.interval.upper;
    e.redundant = !tightens_lower && !tightens_upper;
    e.absorbed_by.reset();
    if (e.redundant) {
      const double lower_gap = b.lower_source
                                   ? gap(b.interval.lower, e.bounds.lower)
                                   : kInf;
      const double upper_gap = b.upper_source
                                   ? gap(e.bounds.upper, b.interval.upper)
                                   : kInf;
      e.absorbed_by = (b.lower_source && lower_gap <= upper_gap)
                          ? b.lower_source
                          : b.upper_source;
      if (!e.absorbed_by) e.absorbed_by = b.lower_source;
      continue;
    }
    if (tightens_lower) {
      b.interval.lower = e.bounds.lower;
      b.lower_source = t;
    }
    if (tightens_upper) {
      b.interval.upper = e.bounds.upper;
      b.upper_source = t;
    }
  }
  return bounds;
}

}  // namespace

bool Region::contains(std::span<const double> x_std) const {
  if (x_std.size() != standardized.size()) return false;
  for (std::size_t f = 0; f < x_std.size(); ++f) {
    if (!standardized[f].contains(x_std[f])) return false;
  }
  return true;
}

Extraction extract_region(const LeurnParams& params, const LeurnConfig& cfg,
                          std::span<const double> x_std,
                          const Preprocessor* preprocessor) {
  const ForwardTrace trace = forward(params, cfg, x_std);
  const std::size_t n = cfg.n_features;
  Extraction out;
  out.trace.reserve(trace.bins.size());
  for (std::size_t layer = 0; layer <= cfg.depth; ++layer) {
    for (std::size_t f = 0; f < n; ++f) {
      const std::size_t j = trace.bins[layer * n + f];
      RuleTraceEntry e;
      e.layer = layer;
      e.feature = f;
      e.bin = j;
      e.bounds = bin_input_interval(j, cfg.regions, trace.tau[layer * n + f]);
      out.trace.push_back(e);
    }
  }
  const std::vector<Bound> bounds = mark_redundancy(out.trace, n);

  Region& region = out.region;
  region.n_features = n;
  region.depth = cfg.depth;
  region.regions = cfg.regions;
  region.bins = trace.bins;
  for (const Bound& b : bounds) {
    region.standardized.push_back(b.interval);
    region.lower_source.push_back(b.lower_source);
    region.upper_source.push_back(b.upper_source);
  }
  region.raw = region.standardized;
  if (preprocessor != nullptr) {
    if (preprocessor->n_features() != n) {
      throw Error(ErrorCode::kShapeMismatch,
                  "preprocessor width does not match the model");
    }
    for (std::size_t f = 0; f < n; ++f) {
      region.raw[f] = {preprocessor->to_raw(f, region.standardized[f].lower),
                       preprocessor->to_raw(f, region.standardized[f].upper)};
    }
  }
  return out;
}

SimplifiedTrace simplify(std::span<const RuleTraceEntry> trace,
                         std::span<const Interval> data_bounds) {
  SimplifiedTrace out;
  out.entries.assign(trace.begin(), trace.end());
  std::size_t n_features = 0;
  for (const auto& e : trace) n_features = std::max(n_features, e.feature + 1);
  if (!data_bounds.empty() && data_bounds.size() < n_features) {
    throw Error(ErrorCode::kShapeMismatch, "simplify: too few data bounds");
  }
  mark_redundancy(out.entries, n_features);
  for (std::size_t t = 0; t < out.entries.size(); ++t) {
    RuleTraceEntry& e = out.entries[t];
    e.category_bias = false;
    if (e.redundant) continue;
    out.kept.push_back(t);
    if (!data_bounds.empty()) {
      const Interval& d = data_bounds[e.feature];
      e.category_bias = e.bounds.lower <= d.lower && e.bounds.upper > d.upper;
    }
  }
  return out;
}

std::vector<Interval> intervals_of(const SimplifiedTrace& simplified,
                                   std::size_t n_features) {
  std::vector<Interval> out(n_features, Interval{-kInf, kInf});
  for (std::size_t t : simplified.kept) {
    const RuleTraceEntry& e = simplified.entries.at(t);
    if (e.feature >= n_features) {
      throw Error(ErrorCode::kShapeMismatch, "intervals_of: feature out of range");
    }
    out[e.feature].lower = std::max(out[e.feature].lower, e.bounds.lower);
    out[e.feature].upper = std::min(out[e.feature].upper, e.bounds.upper);
  }
  return out;
}

std::vector<double> region_output(const LeurnParams& params,
                                  const LeurnConfig& cfg, const Region& region) {
  if (region.n_features != cfg.n_features || region.depth != cfg.depth ||
      region.regions != cfg.regions ||
      region.bins.size() != cfg.embedding_size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "region was not extracted from this model configuration");
  }
  return output_activation(cfg.task, logits_from_bins(params, cfg, region.bins));
}

GeneratedSample generate(const LeurnParams& params, const LeurnConfig& cfg,
                         const Region& region, Rng& rng,
                         std::span<const Interval> data_bounds,
                         const Preprocessor* preprocessor) {
  const std::size_t n = cfg.n_features;
  if (region.standardized.size() != n || region.bins.size() != cfg.embedding_size()) {
    throw Error(ErrorCode::kShapeMismatch, "generate: region does not match model");
  }
  if (data_bounds.size() != n) {
    throw Error(ErrorCode::kShapeMismatch, "generate: need one data bound per feature");
  }
  if (preprocessor != nullptr && preprocessor->n_features() != n) {
    throw Error(ErrorCode::kShapeMismatch, "generate: preprocessor width mismatch");
  }

  // One-hot blocks: levels whose indicator vector lies inside the region.
  struct Block {
    std::size_t first;
    std::size_t count;
    std::vector<std::size_t> allowed;
  };
  std::vector<Block> blocks;
  std::vector<bool> in_block(n, false);
  if (preprocessor != nullptr) {
    for (const ColumnEncoding& col : preprocessor->columns()) {
      if (col.kind != ColumnKind::kCategorical || col.dropped) continue;
      Block b{col.first_feature, col.feature_count, {}};
      for (std::size_t level = 0; level < b.count; ++level) {
        bool ok = true;
        for (std::size_t i = 0; i < b.count && ok; ++i) {
          ok = region.standardized[b.first + i].contains(i == level ? 1.0 : 0.0);
        }
        if (ok) b.allowed.push_back(level);
      }
      if (b.allowed.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "generate: no level of '" + col.name + "' lies in the region");
      }
      for (std::size_t i = 0; i < b.count; ++i) in_block[b.first + i] = true;
      blocks.push_back(std::move(b));
    }
  }

  std::vector<Interval> clipped(n);
  for (std::size_t f = 0; f < n; ++f) {
    if (in_block[f]) continue;
    clipped[f] = {std::max(region.standardized[f].lower, data_bounds[f].lower),
                  std::min(region.standardized[f].upper, data_bounds[f].upper)};
    if (!(clipped[f].lower <= clipped[f].upper) ||
        !std::isfinite(clipped[f].lower) || !std::isfinite(clipped[f].upper)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "generate: empty interval for feature " + std::to_string(f));
    }
  }

  constexpr int kMaxTries = 1000;
  GeneratedSample out{std::vector<double>(n), std::vector<double>(n)};
  std::vector<double>& z = out.model;
  ForwardTrace trace;
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    for (std::size_t f = 0; f < n; ++f) {
      if (in_block[f]) continue;
      z[f] = clipped[f].lower == clipped[f].upper
                 ? clipped[f].lower
                 : rng.uniform(clipped[f].lower, clipped[f].upper);
      out.raw[f] = z[f];
      if (preprocessor != nullptr) {
        out.raw[f] = preprocessor->to_raw(f, z[f]);
        z[f] = preprocessor->to_model(f, out.raw[f]);
      }
    }
    for (const Block& b : blocks) {
      const std::size_t level = b.allowed[rng.index(b.allowed.size())];
      for (std::size_t i = 0; i < b.count; ++i) {
        z[b.first + i] = i == level ? 1.0 : 0.0;
        out.raw[b.first + i] = z[b.first + i];
      }
    }
    forward_into(params, cfg, z, {}, trace);
    if (trace.bins == region.bins) return out;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "generate: could not draw a point inside the region");
}

}  // namespace leurn
