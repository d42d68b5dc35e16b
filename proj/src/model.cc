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
#include "leurn/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "leurn/error.h"

namespace leurn {

void LeurnConfig::validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kConfig, "invalid config: " + msg);
  };
  if (n_features == 0) fail("n_features must be >= 1");
  if (regions < 2) fail("regions (k) must be >= 2");
  if (!(dropout >= 0.0 && dropout < 1.0)) fail("dropout must be in [0, 1)");
  switch (task) {
    case TaskKind::kBinary:
    case TaskKind::kRegression:
      if (output_dim != 1) fail("output_dim must be 1 for binary/regression");
      break;
    case TaskKind::kMulticlass:
      if (output_dim < 2) fail("multiclass needs output_dim >= 2");
      break;
  }
}

LeurnConfig make_config(std::size_t n_features, std::size_t depth,
                        std::size_t regions, double dropout, TaskKind task,
                        std::size_t num_classes, std::uint64_t seed) {
  LeurnConfig cfg;
  cfg.n_features = n_features;
  cfg.depth = depth;
  if (regions == 1) {
    warn("regions k=1 yields a constant indicator; using k=2");
    regions = 2;
  }
  cfg.regions = regions;
  cfg.dropout = dropout;
  cfg.task = task;
  cfg.output_dim = task == TaskKind::kMulticlass ? num_classes : 1;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

// --- parameters -----------------------------------------------------------

LeurnParams LeurnParams::zeros(const LeurnConfig& cfg) {
  const std::size_t n = cfg.n_features;
  LeurnParams p;
  p.tau0.assign(n, 0.0);
  p.rule_layers.resize(cfg.depth);
  for (std::size_t i = 0; i < cfg.depth; ++i) {
    p.rule_layers[i].weights = Matrix((i + 1) * n, n);
    p.rule_layers[i].bias.assign(n, 0.0);
  }
  p.head_weights = Matrix(cfg.embedding_size(), cfg.output_dim);
  p.head_bias.assign(cfg.output_dim, 0.0);
  return p;
}

namespace {

void glorot_uniform(Matrix& w, Rng& rng) {
  const double limit =
      std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
  for (double& v : w.data()) v = rng.uniform(-limit, limit);
}

}  // namespace

LeurnParams LeurnParams::initialize(const LeurnConfig& cfg, Rng& rng) {
  cfg.validate();
  LeurnParams p = zeros(cfg);
  for (double& t : p.tau0) t = rng.uniform(-0.5, 0.5);
  for (auto& layer : p.rule_layers) glorot_uniform(layer.weights, rng);
  glorot_uniform(p.head_weights, rng);
  return p;
}

std::size_t LeurnParams::parameter_count() const {
  std::size_t count = tau0.size() + head_weights.size() + head_bias.size();
  for (const auto& layer : rule_layers) {
    count += layer.weights.size() + layer.bias.size();
  }
  return count;
}

void LeurnParams::flatten_into(std::span<double> out) const {
  if (out.size() != parameter_count()) {
    throw Error(ErrorCode::kShapeMismatch, "flatten: wrong buffer length");
  }
  auto it = out.begin();
  auto put = [&it](std::span<const double> src) {
    it = std::copy(src.begin(), src.end(), it);
  };
  put(tau0);
  for (const auto& layer : rule_layers) {
    put(layer.weights.data());
    put(layer.bias);
  }
  put(head_weights.data());
  put(head_bias);
}

std::vector<double> LeurnParams::flatten() const {
  std::vector<double> out(parameter_count());
  flatten_into(out);
  return out;
}

void LeurnParams::unflatten(std::span<const double> flat) {
  if (flat.size() != parameter_count()) {
    throw Error(ErrorCode::kShapeMismatch, "unflatten: wrong vector length");
  }
  auto it = flat.begin();
  auto take = [&it](std::span<double> dst) {
    std::copy(it, it + static_cast<std::ptrdiff_t>(dst.size()), dst.begin());
    it += static_cast<std::ptrdiff_t>(dst.size());
  };
  take(tau0);
  for (auto& layer : rule_layers) {
    take(layer.weights.data());
    take(layer.bias);
  }
  take(head_weights.data());
  take(head_bias);
}

void LeurnParams::set_zero() {
  std::fill(tau0.begin(), tau0.end(), 0.0);
  for (auto& layer : rule_layers) {
    std::fill(layer.weights.data().begin(), layer.weights.data().end(), 0.0);
    std::fill(layer.bias.begin(), layer.bias.end(), 0.0);
  }
  std::fill(head_weights.data().begin(), head_weights.data().end(), 0.0);
  std::fill(head_bias.begin(), head_bias.end(), 0.0);
}

void LeurnParams::validate(const LeurnConfig& cfg) const {
  const std::size_t n = cfg.n_features;
  auto shape_error = [](const std::string& what) {
    throw Error(ErrorCode::kShapeMismatch, "params: " + what);
  };
  if (tau0.size() != n) shape_error("tau0 length != n_features");
  if (rule_layers.size() != cfg.depth) shape_error("rule layer count != depth");
  for (std::size_t i = 0; i < rule_layers.size(); ++i) {
    const auto& layer = rule_layers[i];
    if (layer.weights.rows() != (i + 1) * n || layer.weights.cols() != n) {
      shape_error("rule layer " + std::to_string(i) + " weights are " +
                  layer.weights.shape_string());
    }
    if (layer.bias.size() != n) {
      shape_error("rule layer " + std::to_string(i) + " bias length");
    }
  }
  if (head_weights.rows() != cfg.embedding_size() ||
      head_weights.cols() != cfg.output_dim) {
    shape_error("head weights are " + head_weights.shape_string());
  }
  if (head_bias.size() != cfg.output_dim) shape_error("head bias length");
  bool finite = all_finite(tau0) && head_weights.all_finite() &&
                all_finite(head_bias);
  for (const auto& layer : rule_layers) {
    finite = finite && layer.weights.all_finite() && all_finite(layer.bias);
  }
  if (!finite) throw Error(ErrorCode::kNonFinite, "params: non-finite entry");
}

// --- qtanh ----------------------------------------------------------------

std::size_t qtanh_bin(double z, std::size_t k) {
  if (k < 2) throw Error(ErrorCode::kConfig, "qtanh: k must be >= 2");
  const double t = std::tanh(z);
  const double pos = std::floor((t + 1.0) * static_cast<double>(k) / 2.0);
  if (pos <= 0.0) return 0;
  const auto j = static_cast<std::size_t>(pos);
  return std::min(j, k - 1);
}

double bin_midpoint(std::size_t j, std::size_t k) {
  return -1.0 + static_cast<double>(2 * j + 1) / static_cast<double>(k);
}

double bin_boundary(std::size_t j, std::size_t k) {
  return -1.0 + static_cast<double>(2 * j) / static_cast<double>(k);
}

double qtanh(double z, std::size_t k) {
  return bin_midpoint(qtanh_bin(z, k), k);
}

Interval bin_input_interval(std::size_t j, std::size_t k, double tau) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Interval iv{-kInf, kInf};
  if (j > 0) iv.lower = std::atanh(bin_boundary(j, k)) - tau;
  if (j + 1 < k) iv.upper = std::atanh(bin_boundary(j + 1, k)) - tau;
  return iv;
}

// --- forward --------------------------------------------------------------

namespace {

// Sizes only; finiteness is checked by LeurnParams::validate.
void check_shapes(const LeurnParams& params, const LeurnConfig& cfg) {
  const std::size_t n = cfg.n_features;
  bool ok = params.tau0.size() == n && params.rule_layers.size() == cfg.depth &&
            params.head_weights.rows() == cfg.embedding_size() &&
            params.head_weights.cols() == cfg.output_dim &&
            params.head_bias.size() == cfg.output_dim;
  for (std::size_t i = 0; ok && i < params.rule_layers.size(); ++i) {
    const RuleLayer& l = params.rule_layers[i];
    ok = l.weights.rows() == (i + 1) * n && l.weights.cols() == n &&
         l.bias.size() == n;
  }
  if (!ok) {
    throw Error(ErrorCode::kShapeMismatch,
                "parameters do not match the model configuration");
  }
}

void check_input(const LeurnConfig& cfg, std::span<const double> x) {
  if (x.size() != cfg.n_features) {
    throw Error(ErrorCode::kShapeMismatch,
                "forward: input has " + std::to_string(x.size()) +
                    " features, model expects " +
                    std::to_string(cfg.n_features));
  }
  if (!all_finite(x)) {
    throw Error(ErrorCode::kNonFinite, "forward: non-finite input");
  }
}

void make_masks(const LeurnConfig& cfg, Rng& rng,
                std::vector<std::vector<double>>& masks) {
  const std::size_t n = cfg.n_features;
  const double keep_scale = 1.0 / (1.0 - cfg.dropout);
  masks.resize(cfg.depth + 1);
  for (std::size_t l = 0; l <= cfg.depth; ++l) {
    auto& m = masks[l];
    m.resize((l + 1) * n);
    for (double& v : m) v = rng.uniform() < cfg.dropout ? 0.0 : keep_scale;
  }
}

// out[c] = bias[c] + sum_r w(r, c) * in[r] * mask[r], over the first
// w.rows() entries of `in`.
void linear_transposed(const Matrix& w, std::span<const double> bias,
                       std::span<const double> in,
                       const std::vector<double>* mask,
                       std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    const double v = mask ? in[r] * (*mask)[r] : in[r];
    if (v == 0.0) continue;
    const auto row = w.row(r);
    for (std::size_t c = 0; c < w.cols(); ++c) out[c] += row[c] * v;
  }
  for (std::size_t c = 0; c < out.size(); ++c) out[c] += bias[c];
}

// Shared layer recursion. `indicator(layer, feature, tau, bin&)` returns s
// and stores the bin index.
template <typename IndicatorFn>
void propagate(const LeurnParams& params, const LeurnConfig& cfg,
               const std::vector<std::vector<double>>* masks,
               IndicatorFn&& indicator, ForwardTrace& t) {
  const std::size_t n = cfg.n_features;
  const std::size_t total = cfg.embedding_size();
  t.n_features = n;
  t.depth = cfg.depth;
  t.tau.resize(total);
  t.indicator.resize(total);
  t.embedding.resize(total);
  t.bins.resize(total);
  t.logits.resize(cfg.output_dim);
  std::copy(params.tau0.begin(), params.tau0.end(), t.tau.begin());
  for (std::size_t i = 0; i <= cfg.depth; ++i) {
    for (std::size_t f = 0; f < n; ++f) {
      const std::size_t idx = i * n + f;
      const double tau = t.tau[idx];
      const double s = indicator(i, f, tau, t.bins[idx]);
      t.indicator[idx] = s;
      t.embedding[idx] = s * std::tanh(tau);
    }
    if (i < cfg.depth) {
      const auto& layer = params.rule_layers[i];
      linear_transposed(layer.weights, layer.bias, t.embedding,
                        masks ? &(*masks)[i] : nullptr,
                        std::span<double>(t.tau).subspan((i + 1) * n, n));
    }
  }
  linear_transposed(params.head_weights, params.head_bias, t.embedding,
                    masks ? &(*masks)[cfg.depth] : nullptr, t.logits);
}

}  // namespace

void forward_into(const LeurnParams& params, const LeurnConfig& cfg,
                  std::span<const double> x_std, const ForwardOptions& options,
                  ForwardTrace& trace) {
  check_shapes(params, cfg);
  check_input(cfg, x_std);
  const std::size_t k = cfg.regions;
  trace.activation = options.activation;
  trace.input.assign(x_std.begin(), x_std.end());

  const std::vector<std::vector<double>>* masks = nullptr;
  if (options.mode == Mode::kTrain && cfg.dropout > 0.0) {
    if (options.rng == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "forward: train mode with dropout needs an rng");
    }
    make_masks(cfg, *options.rng, trace.dropout_masks);
    masks = &trace.dropout_masks;
  } else {
    trace.dropout_masks.clear();
  }

  if (options.activation == Activation::kQuantized) {
    propagate(params, cfg, masks,
              [&](std::size_t, std::size_t f, double tau, std::size_t& bin) {
                bin = qtanh_bin(x_std[f] + tau, k);
                return bin_midpoint(bin, k);
              },
              trace);
  } else {
    propagate(params, cfg, masks,
              [&](std::size_t, std::size_t f, double tau, std::size_t& bin) {
                bin = qtanh_bin(x_std[f] + tau, k);
                return std::tanh(x_std[f] + tau);
              },
              trace);
  }
  if (!all_finite(trace.logits)) {
    throw Error(ErrorCode::kNonFinite, "forward: non-finite logits");
  }
}

ForwardTrace forward(const LeurnParams& params, const LeurnConfig& cfg,
                     std::span<const double> x_std,
                     const ForwardOptions& options) {
  ForwardTrace trace;
  forward_into(params, cfg, x_std, options, trace);
  return trace;
}

std::vector<double> logits_from_bins(const LeurnParams& params,
                                     const LeurnConfig& cfg,
                                     std::span<const std::size_t> bins) {
  if (bins.size() != cfg.embedding_size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "logits_from_bins: expected " +
                    std::to_string(cfg.embedding_size()) + " bins, got " +
                    std::to_string(bins.size()));
  }
  check_shapes(params, cfg);
  const std::size_t k = cfg.regions;
  const std::size_t n = cfg.n_features;
  ForwardTrace trace;
  propagate(params, cfg, nullptr,
            [&](std::size_t i, std::size_t f, double, std::size_t& bin) {
              bin = bins[i * n + f];
              if (bin >= k) {
                throw Error(ErrorCode::kShapeMismatch,
                            "logits_from_bins: bin index out of range");
              }
              return bin_midpoint(bin, k);
            },
            trace);
  return trace.logits;
}

std::vector<double> output_activation(TaskKind task,
                                      std::span<const double> logits) {
  std::vector<double> out(logits.begin(), logits.end());
  switch (task) {
    case TaskKind::kBinary:
      for (double& v : out) v = 1.0 / (1.0 + std::exp(-v));
      break;
    case TaskKind::kMulticlass: {
      const double mx = *std::max_element(out.begin(), out.end());
      double sum = 0.0;
      for (double& v : out) {
        v = std::exp(v - mx);
        sum += v;
      }
      for (double& v : out) v /= sum;
      break;
    }
    case TaskKind::kRegression:
      break;
  }
  return out;
}

std::vector<double> predict(const LeurnParams& params, const LeurnConfig& cfg,
                            std::span<const double> x_std) {
  const ForwardTrace trace = forward(params, cfg, x_std);
  return output_activation(cfg.task, trace.logits);
}

// --- backward -------------------------------------------------------------

void backward_accumulate(const ForwardTrace& trace, const LeurnParams& params,
                         const LeurnConfig& cfg,
                         std::span<const double> grad_logits,
                         LeurnGradients& grads, BackwardWorkspace& ws) {
  const std::size_t n = cfg.n_features;
  const std::size_t d = cfg.depth;
  const std::size_t total = cfg.embedding_size();
  if (trace.n_features != n || trace.depth != d ||
      trace.embedding.size() != total || trace.input.size() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                "backward: trace does not match config");
  }
  if (grad_logits.size() != cfg.output_dim) {
    throw Error(ErrorCode::kShapeMismatch,
                "backward: grad_logits length != output_dim");
  }
  const bool masked = !trace.dropout_masks.empty();
  const std::size_t out_dim = cfg.output_dim;

  ws.grad_embedding.assign(total, 0.0);
  ws.grad_tau.resize(n);

  // Head.
  {
    const std::vector<double>* mask = masked ? &trace.dropout_masks[d] : nullptr;
    for (std::size_t r = 0; r < total; ++r) {
      const double m = mask ? (*mask)[r] : 1.0;
      const double in = trace.embedding[r] * m;
      const auto w_row = params.head_weights.row(r);
      auto g_row = grads.head_weights.row(r);
      double acc = 0.0;
      for (std::size_t o = 0; o < out_dim; ++o) {
        g_row[o] += in * grad_logits[o];
        acc += w_row[o] * grad_logits[o];
      }
      ws.grad_embedding[r] += acc * m;
    }
    for (std::size_t o = 0; o < out_dim; ++o) {
      grads.head_bias[o] += grad_logits[o];
    }
  }

  for (std::size_t step = 0; step <= d; ++step) {
    const std::size_t i = d - step;
    for (std::size_t f = 0; f < n; ++f) {
      const std::size_t idx = i * n + f;
      const double tau = trace.tau[idx];
      const double th = std::tanh(tau);
      const double tz = std::tanh(trace.input[f] + tau);
      const double ds_dz = 1.0 - tz * tz;
      const double de_dtau =
          ds_dz * th + trace.indicator[idx] * (1.0 - th * th);
      ws.grad_tau[f] = ws.grad_embedding[idx] * de_dtau;
    }
    if (i == 0) {
      for (std::size_t f = 0; f < n; ++f) grads.tau0[f] += ws.grad_tau[f];
      break;
    }
    const std::size_t layer_index = i - 1;
    const auto& layer = params.rule_layers[layer_index];
    auto& g_layer = grads.rule_layers[layer_index];
    const std::vector<double>* mask =
        masked ? &trace.dropout_masks[layer_index] : nullptr;
    for (std::size_t f = 0; f < n; ++f) g_layer.bias[f] += ws.grad_tau[f];
    for (std::size_t r = 0; r < i * n; ++r) {
      const double m = mask ? (*mask)[r] : 1.0;
      const double in = trace.embedding[r] * m;
      const auto w_row = layer.weights.row(r);
      auto g_row = g_layer.weights.row(r);
      double acc = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        g_row[c] += in * ws.grad_tau[c];
        acc += w_row[c] * ws.grad_tau[c];
      }
      ws.grad_embedding[r] += acc * m;
    }
  }
}

LeurnGradients backward(const ForwardTrace& trace, const LeurnParams& params,
                        const LeurnConfig& cfg,
                        std::span<const double> grad_logits) {
  params.validate(cfg);
  LeurnGradients grads = LeurnParams::zeros(cfg);
  BackwardWorkspace ws;
  backward_accumulate(trace, params, cfg, grad_logits, grads, ws);
  return grads;
}

}  // namespace leurn
