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
#ifndef LEURN_RULES_H_
#define LEURN_RULES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "leurn/data.h"
#include "leurn/model.h"
#include "leurn/numeric.h"

namespace leurn {

// The bin that one feature fell into at one layer.
struct RuleTraceEntry {
  std::size_t layer = 0;
  std::size_t feature = 0;
  std::size_t bin = 0;
  // Standardized units, lower-closed and upper-open.
  Interval bounds;
  // Did not tighten the interval built from earlier layers.
  bool redundant = false;
  // Index (into the trace) of the entry that takes over a redundant
  // entry's contribution.
  std::optional<std::size_t> absorbed_by;
  // Non-redundant, but spans the whole training range of its feature.
  bool category_bias = false;

  friend bool operator==(const RuleTraceEntry&, const RuleTraceEntry&) = default;
};

struct Region {
  std::size_t n_features = 0;
  std::size_t depth = 0;
  std::size_t regions = 0;
  std::vector<Interval> standardized;
  // Equal to `standardized` unless a preprocessor was supplied.
  std::vector<Interval> raw;
  // Per feature, trace indices of the entries defining the lower and upper
  // bound (nullopt for an unbounded side).
  std::vector<std::optional<std::size_t>> lower_source;
  std::vector<std::optional<std::size_t>> upper_source;
  // Layer-major bin indices, (depth + 1) * n_features entries.
  std::vector<std::size_t> bins;

  bool contains(std::span<const double> x_std) const;
  friend bool operator==(const Region&, const Region&) = default;
};

struct Extraction {
  Region region;
  // Layer-major; entry layer * n + f.
  std::vector<RuleTraceEntry> trace;
};

Extraction extract_region(const LeurnParams& params, const LeurnConfig& cfg,
                          std::span<const double> x_std,
                          const Preprocessor* preprocessor = nullptr);

struct SimplifiedTrace {
  // Full trace with redundancy, absorption and category-bias flags.
  std::vector<RuleTraceEntry> entries;
  // Indices of the entries that are still listed.
  std::vector<std::size_t> kept;
};

// Marks redundant entries and records their absorbers. With `data_bounds`
// (model units, one per feature), kept entries whose interval covers the
// whole training range are flagged as category bias.
SimplifiedTrace simplify(std::span<const RuleTraceEntry> trace,
                         std::span<const Interval> data_bounds = {});

// Region implied by the kept entries of a simplified trace.
std::vector<Interval> intervals_of(const SimplifiedTrace& simplified,
                                   std::size_t n_features);

// Output evaluated from the region's bins alone.
std::vector<double> region_output(const LeurnParams& params,
                                  const LeurnConfig& cfg, const Region& region);

struct GeneratedSample {
  std::vector<double> model;
  // Raw units; re-encoding these reproduces `model` exactly.
  std::vector<double> raw;
};

// Draws a point of `region`, clipped to `data_bounds` (model units). With a
// preprocessor, one-hot blocks draw a level whose indicator lies inside the
// region. Every draw is checked against the region's bins.
GeneratedSample generate(const LeurnParams& params, const LeurnConfig& cfg,
                         const Region& region, Rng& rng,
                         std::span<const Interval> data_bounds,
                         const Preprocessor* preprocessor = nullptr);

}  // namespace leurn

#endif  // LEURN_RULES_H_
