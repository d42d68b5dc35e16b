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
#ifndef LEURN_NUMERIC_H_
#define LEURN_NUMERIC_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace leurn {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool all_finite() const;
  std::string shape_string() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Throws kShapeMismatch naming both shapes when a.cols != b.rows.
Matrix matmul(const Matrix& a, const Matrix& b);

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamState() = default;
  AdamState(std::size_t n, AdamOptions opts = {})
      : options(opts), first_moment(n, 0.0), second_moment(n, 0.0) {}

  AdamOptions options;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::uint64_t step = 0;
};

// One bias-corrected Adam update in place.
void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState& state);

// Central-difference gradient of `f` at `x`.
std::vector<double> finite_diff(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double eps);

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

// Seeded generator. Conversions to reals are done here rather than through
// <random> distributions so sequences are identical across standard
// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(mix_seed(seed, 0)) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1).
  double uniform();
  // Uniform on the open interval (lo, hi).
  double uniform_open(double lo, double hi);
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  std::size_t index(std::size_t n);
  // Child generator with an independent stream.
  Rng split() { return Rng(next_u64()); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

bool all_finite(std::span<const double> v);

}  // namespace leurn

#endif  // LEURN_NUMERIC_H_
