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
#ifndef LEURN_SIMILARITY_H_
#define LEURN_SIMILARITY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "leurn/data.h"
#include "leurn/model.h"
#include "leurn/numeric.h"

namespace leurn {

// Concatenated e_{0:d} of an eval-mode forward pass.
std::vector<double> embed(const LeurnParams& params, const LeurnConfig& cfg,
                          std::span<const double> x_std);

// exp(-gamma * |a - b|^2).
double rbf_similarity(std::span<const double> a, std::span<const double> b,
                      double gamma);

struct EmbeddingIndex {
  Matrix embeddings;
  double gamma = 1.0;

  // gamma defaults to 1 / embedding length.
  static EmbeddingIndex build(const LeurnParams& params, const LeurnConfig& cfg,
                              const Dataset& data,
                              std::optional<double> gamma = std::nullopt);
  std::size_t size() const { return embeddings.rows(); }
  // Largest similarity of `embedding` to any indexed row.
  double max_similarity(std::span<const double> embedding) const;
};

double confidence(const LeurnParams& params, const LeurnConfig& cfg,
                  const EmbeddingIndex& index, std::span<const double> x_std);

}  // namespace leurn

#endif  // LEURN_SIMILARITY_H_
