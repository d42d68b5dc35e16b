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
#include "leurn/similarity.h"

#include <algorithm>
#include <cmath>

#include "leurn/error.h"

namespace leurn {

std::vector<double> embed(const LeurnParams& params, const LeurnConfig& cfg,
                          std::span<const double> x_std) {
  return forward(params, cfg, x_std).embedding;
}

double rbf_similarity(std::span<const double> a, std::span<const double> b,
                      double gamma) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kShapeMismatch, "rbf_similarity: length mismatch");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "rbf_similarity: gamma must be > 0");
  }
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

EmbeddingIndex EmbeddingIndex::build(const LeurnParams& params,
                                     const LeurnConfig& cfg, const Dataset& data,
                                     std::optional<double> gamma) {
  if (data.rows() == 0) throw Error(ErrorCode::kData, "index: empty dataset");
  EmbeddingIndex index;
  const std::size_t width = cfg.embedding_size();
  index.gamma = gamma.value_or(1.0 / static_cast<double>(width));
  if (!(index.gamma > 0.0) || !std::isfinite(index.gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "index: gamma must be > 0");
  }
  index.embeddings = Matrix(data.rows(), width);
  ForwardTrace trace;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    forward_into(params, cfg, data.row(i), {}, trace);
    std::copy(trace.embedding.begin(), trace.embedding.end(),
              index.embeddings.row(i).begin());
  }
  return index;
}

double EmbeddingIndex::max_similarity(std::span<const double> embedding) const {
  if (size() == 0) throw Error(ErrorCode::kMissingIndex, "embedding index is empty");
  if (embedding.size() != embeddings.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "index: embedding length mismatch");
  }
  // Nearest neighbour in squared distance gives the largest similarity.
  double best = INFINITY;
  for (std::size_t r = 0; r < size(); ++r) {
    const auto row = embeddings.row(r);
    double d2 = 0.0;
    for (std::size_t i = 0; i < row.size() && d2 < best; ++i) {
      const double d = row[i] - embedding[i];
      d2 += d * d;
    }
    best = std::min(best, d2);
  }
  return std::exp(-gamma * best);
}

double confidence(const LeurnParams& params, const LeurnConfig& cfg,
                  const EmbeddingIndex& index, std::span<const double> x_std) {
  return index.max_similarity(embed(params, cfg, x_std));
}

}  // namespace leurn
