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
#ifndef LEURN_MODEL_H_
#define LEURN_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "leurn/numeric.h"
#include "leurn/task.h"

namespace leurn {

struct LeurnConfig {
  std::size_t n_features = 0;
  // Number of FC rule-finding layers after the directly learned tau_0.
  std::size_t depth = 0;
  // Quantization levels of qtanh.
  std::size_t regions = 2;
  double dropout = 0.0;
  TaskKind task = TaskKind::kBinary;
  // 1 for binary and regression, the class count for multiclass.
  std::size_t output_dim = 1;
  std::uint64_t seed = 0;

  std::size_t embedding_size() const { return (depth + 1) * n_features; }

  // Throws kConfig on any violated invariant.
  void validate() const;
};

// Builds a validated config. A requested `regions` of 1 is mapped to 2 with
// a warning, since a single level carries no information.
LeurnConfig make_config(std::size_t n_features, std::size_t depth,
                        std::size_t regions, double dropout, TaskKind task,
                        std::size_t num_classes = 2, std::uint64_t seed = 0);

struct RuleLayer {
  // ((i + 1) * n_features) x n_features for rule layer i.
  Matrix weights;
  std::vector<double> bias;

  friend bool operator==(const RuleLayer&, const RuleLayer&) = default;
};

struct LeurnParams {
  std::vector<double> tau0;
  std::vector<RuleLayer> rule_layers;
  // ((depth + 1) * n_features) x output_dim.
  Matrix head_weights;
  std::vector<double> head_bias;

  static LeurnParams zeros(const LeurnConfig& cfg);
  // tau_0 ~ U(-0.5, 0.5), Glorot-uniform weights, zero biases.
  static LeurnParams initialize(const LeurnConfig& cfg, Rng& rng);

  std::size_t parameter_count() const;
  void flatten_into(std::span<double> out) const;
  std::vector<double> flatten() const;
  void unflatten(std::span<const double> flat);
  void set_zero();

  // Throws kShapeMismatch / kNonFinite.
  void validate(const LeurnConfig& cfg) const;

  friend bool operator==(const LeurnParams&, const LeurnParams&) = default;
};

using LeurnGradients = LeurnParams;

// --- quantized tanh -------------------------------------------------------

// Bin of tanh(z) among `k` equal-width bins of [-1, 1]; a value on a
// boundary belongs to the upper bin.
std::size_t qtanh_bin(double z, std::size_t k);
// Midpoint -1 + (2j + 1) / k of bin j.
double bin_midpoint(std::size_t j, std::size_t k);
// Output-space boundary -1 + 2j / k, for j in 1..k-1.
double bin_boundary(std::size_t j, std::size_t k);
double qtanh(double z, std::size_t k);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double x) const { return x >= lower && x < upper; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Input-space interval [atanh(b_j) - tau, atanh(b_{j+1}) - tau) of bin j,
// with infinite ends for the outermost bins.
Interval bin_input_interval(std::size_t j, std::size_t k, double tau);

// --- forward / backward ---------------------------------------------------

enum class Mode { kEval, kTrain };

// kSurrogate replaces qtanh by plain tanh, giving a smooth network whose
// analytic gradients can be checked against finite differences.
enum class Activation { kQuantized, kSurrogate };

struct ForwardOptions {
  Mode mode = Mode::kEval;
  Activation activation = Activation::kQuantized;
  // Required when mode == kTrain and dropout > 0.
  Rng* rng = nullptr;
};

struct ForwardTrace {
  std::size_t n_features = 0;
  std::size_t depth = 0;
  Activation activation = Activation::kQuantized;
  std::vector<double> input;
  // All four are layer-major with (depth + 1) * n_features entries; the
  // embedding vector is e_{0:d}.
  std::vector<double> tau;
  std::vector<double> indicator;
  std::vector<double> embedding;
  std::vector<std::size_t> bins;
  std::vector<double> logits;
  // Per FC layer (rule layers then head), input mask including the inverted
  // dropout scale. Empty unless dropout was applied.
  std::vector<std::vector<double>> dropout_masks;

  std::span<const double> tau_at(std::size_t layer) const {
    return std::span<const double>(tau).subspan(layer * n_features, n_features);
  }
  std::span<const double> indicator_at(std::size_t layer) const {
    return std::span<const double>(indicator).subspan(layer * n_features,
                                                      n_features);
  }
  std::span<const double> embedding_at(std::size_t layer) const {
    return std::span<const double>(embedding).subspan(layer * n_features,
                                                      n_features);
  }
};

ForwardTrace forward(const LeurnParams& params, const LeurnConfig& cfg,
                     std::span<const double> x_std,
                     const ForwardOptions& options = {});

// Same as forward() but reuses the buffers of `trace`.
void forward_into(const LeurnParams& params, const LeurnConfig& cfg,
                  std::span<const double> x_std, const ForwardOptions& options,
                  ForwardTrace& trace);

// Forward pass in which the bin of every (layer, feature) is given rather
// than computed from an input. Used to evaluate a decision region directly.
std::vector<double> logits_from_bins(const LeurnParams& params,
                                     const LeurnConfig& cfg,
                                     std::span<const std::size_t> bins);

// sigmoid / softmax / identity.
std::vector<double> output_activation(TaskKind task,
                                      std::span<const double> logits);

std::vector<double> predict(const LeurnParams& params, const LeurnConfig& cfg,
                            std::span<const double> x_std);

// Gradients of the loss w.r.t. all parameters given dL/dlogits. The qtanh
// derivative is replaced by that of tanh (straight-through estimator).
LeurnGradients backward(const ForwardTrace& trace, const LeurnParams& params,
                        const LeurnConfig& cfg,
                        std::span<const double> grad_logits);

// Scratch space for backward_accumulate().
struct BackwardWorkspace {
  std::vector<double> grad_embedding;
  std::vector<double> grad_tau;
};

// Adds the gradient contribution of one trace into `grads`.
void backward_accumulate(const ForwardTrace& trace, const LeurnParams& params,
                         const LeurnConfig& cfg,
                         std::span<const double> grad_logits,
                         LeurnGradients& grads, BackwardWorkspace& ws);

}  // namespace leurn

#endif  // LEURN_MODEL_H_
