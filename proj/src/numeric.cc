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
#include "leurn/numeric.h"

#include <atomic>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "leurn/error.h"

namespace leurn {

namespace {
std::atomic<bool> g_warnings_enabled{true};
}  // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kShapeMismatch: return "shape_mismatch";
    case ErrorCode::kNonFinite: return "non_finite";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kData: return "data";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kVersion: return "version";
    case ErrorCode::kMissingIndex: return "missing_index";
  }
  return "unknown";
}

void warn(std::string_view message) {
  if (g_warnings_enabled.load(std::memory_order_relaxed)) {
    std::cerr << "warning: " << message << "\n";
  }
}

void set_warnings_enabled(bool enabled) { g_warnings_enabled = enabled; }

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw Error(ErrorCode::kShapeMismatch, "ragged matrix initializer");
    }
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::all_finite() const { return leurn::all_finite(data_); }

std::string Matrix::shape_string() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_;
  return os.str();
}

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kShapeMismatch,
                "matmul: cannot multiply " + a.shape_string() + " by " +
                    b.shape_string());
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double av = a(i, p);
      const auto b_row = b.row(p);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += av * b_row[j];
    }
  }
  if (!out.all_finite()) {
    throw Error(ErrorCode::kNonFinite, "matmul: non-finite result");
  }
  return out;
}

void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState& state) {
  const std::size_t n = params.size();
  if (grads.size() != n || state.first_moment.size() != n ||
      state.second_moment.size() != n) {
    std::ostringstream os;
    os << "adam_step: length mismatch (params " << n << ", grads "
       << grads.size() << ", moments " << state.first_moment.size() << "/"
       << state.second_moment.size() << ")";
    throw Error(ErrorCode::kShapeMismatch, os.str());
  }
  const AdamOptions& o = state.options;
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(o.beta1, t);
  const double correction2 = 1.0 - std::pow(o.beta2, t);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grads[i];
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = o.beta1 * m + (1.0 - o.beta1) * g;
    v = o.beta2 * v + (1.0 - o.beta2) * g * g;
    const double m_hat = m / correction1;
    const double v_hat = v / correction2;
    params[i] -= o.learning_rate * m_hat / (std::sqrt(v_hat) + o.epsilon);
  }
}

std::vector<double> finite_diff(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double eps) {
  if (!(eps > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "finite_diff: eps must be > 0");
  }
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = point[i];
    point[i] = saved + eps;
    const double plus = f(point);
    point[i] = saved - eps;
    const double minus = f(point);
    point[i] = saved;
    if (!std::isfinite(plus) || !std::isfinite(minus)) {
      throw Error(ErrorCode::kNonFinite,
                  "finite_diff: non-finite function value at coordinate " +
                      std::to_string(i));
    }
    grad[i] = (plus - minus) / (2.0 * eps);
  }
  return grad;
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open(double lo, double hi) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::kInvalidArgument, "Rng::uniform_open: empty interval");
  }
  for (;;) {
    const double u = uniform();
    if (u == 0.0) continue;
    const double v = lo + (hi - lo) * u;
    if (v > lo && v < hi) return v;
  }
}

double Rng::normal() {
  // Box-Muller, one value per call.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "Rng::index: n == 0");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % bound);
}

}  // namespace leurn
