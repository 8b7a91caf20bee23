// Copyright 2026 The ltiproc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <type_traits>
#include <vector>

#include "ltiproc/errors.hpp"
#include "ltiproc/hermite.hpp"
#include "ltiproc/laurent_matrix.hpp"

namespace ltiproc {

/// Full row normal rank kernel R (m x n) of the complete behavior
/// {w : R(sigma) w = 0}, sigma the forward shift. Only constructible through
/// kernel_new / kernel_reduce.
class KernelRepresentation {
 public:
  const LaurentMatrix& matrix() const { return matrix_; }
  int m() const { return matrix_.rows(); }
  int n() const { return matrix_.cols(); }

  /// Exponent range [low, high] of the stencil R(z) = sum_i R_i z^i.
  int low_exponent() const { return matrix_.low_exponent(); }
  int high_exponent() const { return matrix_.high_exponent(); }
  int stencil_width() const { return high_exponent() - low_exponent(); }

  friend bool operator==(const KernelRepresentation&, const KernelRepresentation&) = default;

 private:
  explicit KernelRepresentation(LaurentMatrix m) : matrix_(std::move(m)) {}
  friend KernelRepresentation kernel_new(const LaurentMatrix&);
  friend KernelRepresentation kernel_reduce(const LaurentMatrix&);

  LaurentMatrix matrix_;
};

/// Validates full row normal rank and the absence of zero rows.
inline KernelRepresentation kernel_new(const LaurentMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    if (m.row_is_zero(i)) throw RankDeficient(normal_rank(m), m.rows());
  const int rank = normal_rank(m);
  if (rank != m.rows()) throw RankDeficient(rank, m.rows());
  return KernelRepresentation(m);
}

/// Full row rank kernel with the same behavior: the nonzero rows of the
/// Hermite form.
inline KernelRepresentation kernel_reduce(const LaurentMatrix& m) {
  if (m.is_zero()) throw ZeroMatrix("kernel of the zero matrix is the whole signal space");
  const LaurentMatrix canonical = hermite_form(m).canonical;
  const int rank = nonzero_row_count(canonical);
  LaurentMatrix reduced(rank, m.cols());
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < m.cols(); ++j) reduced(i, j) = canonical(i, j);
  return KernelRepresentation(std::move(reduced));
}

/// Samples w(t1), ..., w(t2) of an R^n-valued signal, stored time-major.
/// Scalar is double for measured/simulated data or Rational for exact data.
template <class Scalar>
class Window {
 public:
  Window(std::int64_t start_time, int dimension, std::vector<Scalar> samples)
      : start_(start_time), dim_(dimension), data_(std::move(samples)) {
    if (dim_ < 1) throw DimensionMismatch("window dimension must be positive");
    if (data_.empty() || data_.size() % dim_ != 0)
      throw DimensionMismatch("window must hold a positive whole number of samples");
  }

  /// From a list of sample vectors, all of the same length.
  Window(std::int64_t start_time, const std::vector<std::vector<Scalar>>& samples)
      : start_(start_time) {
    if (samples.empty()) throw DimensionMismatch("window must be nonempty");
    dim_ = static_cast<int>(samples.front().size());
    if (dim_ < 1) throw DimensionMismatch("window dimension must be positive");
    for (const auto& s : samples) {
      if (static_cast<int>(s.size()) != dim_)
        throw DimensionMismatch("window samples have different dimensions");
      data_.insert(data_.end(), s.begin(), s.end());
    }
  }

  std::int64_t start_time() const { return start_; }
  std::int64_t end_time() const { return start_ + length() - 1; }
  int dimension() const { return dim_; }
  std::int64_t length() const { return static_cast<std::int64_t>(data_.size()) / dim_; }

  /// Component k of the sample at absolute time t.
  const Scalar& at(std::int64_t t, int k) const {
    return data_[static_cast<std::size_t>((t - start_) * dim_ + k)];
  }
  Scalar& at(std::int64_t t, int k) {
    return data_[static_cast<std::size_t>((t - start_) * dim_ + k)];
  }

  const std::vector<Scalar>& data() const { return data_; }

  Window with_start_time(std::int64_t t) const {
    Window w = *this;
    w.start_ = t;
    return w;
  }

 private:
  std::int64_t start_;
  int dim_;
  std::vector<Scalar> data_;
};

using TrajectoryWindow = Window<double>;
using ExactWindow = Window<Rational>;

namespace detail {

template <class Scalar>
Scalar coefficient_as(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>)
    return q;
  else
    return static_cast<Scalar>(to_double(q));
}

}  // namespace detail

/// Residual r(t) = sum_i R_i w(t + i) for every t whose stencil lies inside
/// the window. The output starts at t1 - low and is shorter by the stencil
/// width.
template <class Scalar>
Window<Scalar> apply_shift(const KernelRepresentation& k, const Window<Scalar>& w) {
  if (w.dimension() != k.n())
    throw DimensionMismatch("window has dimension " + std::to_string(w.dimension()) +
                            ", kernel expects " + std::to_string(k.n()));
  const int low = k.low_exponent();
  const int high = k.high_exponent();
  const std::int64_t out_length = w.length() - (high - low);
  if (out_length < 1)
    throw WindowTooShort("window of length " + std::to_string(w.length()) +
                         " does not fit a stencil of width " + std::to_string(high - low));

  // Coefficient taps: (row, col, shift, value), skipping zeros.
  struct Tap {
    int row, col, shift;
    Scalar value;
  };
  std::vector<Tap> taps;
  const LaurentMatrix& r = k.matrix();
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) {
      const LaurentPolynomial& p = r(i, j);
      for (int e = p.low_exponent(); e <= p.high_exponent() && !p.is_zero(); ++e) {
        const Rational c = p.coefficient(e);
        if (c != 0) taps.push_back({i, j, e, detail::coefficient_as<Scalar>(c)});
      }
    }

  const std::int64_t out_start = w.start_time() - low;
  std::vector<Scalar> out(static_cast<std::size_t>(out_length * k.m()), Scalar(0));
  for (std::int64_t s = 0; s < out_length; ++s) {
    const std::int64_t t = out_start + s;
    for (const Tap& tap : taps)
      out[static_cast<std::size_t>(s * k.m() + tap.row)] += tap.value * w.at(t + tap.shift, tap.col);
  }
  return Window<Scalar>(out_start, k.m(), std::move(out));
}

/// Default membership tolerances: residuals of exact windows are exact.
template <class Scalar>
constexpr double default_member_tolerance() {
  return std::is_same_v<Scalar, Rational> ? 0.0 : 1e-9;
}

/// Every residual entry within tol in absolute value.
template <class Scalar>
bool is_member(const KernelRepresentation& k, const Window<Scalar>& w,
               double tol = default_member_tolerance<Scalar>()) {
  if (tol < 0) throw InvalidArgument("tolerance must be nonnegative");
  const Window<Scalar> residual = apply_shift(k, w);
  for (const Scalar& r : residual.data()) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      if (abs(r) > Rational(tol)) return false;
    } else {
      if (!(std::fabs(r) <= tol)) return false;
    }
  }
  return true;
}

/// Same behavior: the Hermite canonical forms coincide, i.e. K1 = U K2 for a
/// unimodular U.
inline bool behaviors_equivalent(const KernelRepresentation& k1, const KernelRepresentation& k2) {
  if (k1.m() != k2.m() || k1.n() != k2.n())
    throw ShapeMismatch(std::to_string(k1.m()) + "x" + std::to_string(k1.n()) + " vs " +
                        std::to_string(k2.m()) + "x" + std::to_string(k2.n()));
  return hermite_form(k1.matrix()).canonical == hermite_form(k2.matrix()).canonical;
}

/// Kernel of the intersection of both behaviors.
inline KernelRepresentation intersect(const KernelRepresentation& k1,
                                      const KernelRepresentation& k2) {
  if (k1.n() != k2.n())
    throw SignalDimensionMismatch(std::to_string(k1.n()) + " vs " + std::to_string(k2.n()));
  return kernel_reduce(vstack(k1.matrix(), k2.matrix()));
}

}  // namespace ltiproc
