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

#include <Eigen/Dense>

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ltiproc/errors.hpp"
#include "ltiproc/laurent_polynomial.hpp"

namespace ltiproc {

/// Dense p x n matrix over Q[z, 1/z], row-major. Always at least 1 x 1.
class LaurentMatrix {
 public:
  LaurentMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1)
      throw DimensionMismatch("matrix must have at least one row and column");
    entries_.resize(static_cast<std::size_t>(rows) * cols);
  }

  /// From nested rows; every row must have the same length.
  LaurentMatrix(std::initializer_list<std::initializer_list<LaurentPolynomial>> grid)
      : LaurentMatrix(static_cast<int>(grid.size()),
                      grid.size() ? static_cast<int>(grid.begin()->size()) : 0) {
    int i = 0;
    for (const auto& row : grid) {
      if (static_cast<int>(row.size()) != cols_)
        throw DimensionMismatch("ragged matrix rows");
      int j = 0;
      for (const auto& entry : row) (*this)(i, j++) = entry;
      ++i;
    }
  }

  static LaurentMatrix identity(int n) {
    LaurentMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  LaurentPolynomial& operator()(int i, int j) { return entries_[index(i, j)]; }
  const LaurentPolynomial& operator()(int i, int j) const { return entries_[index(i, j)]; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const LaurentPolynomial& p) { return p.is_zero(); });
  }

  bool row_is_zero(int i) const {
    for (int j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero()) return false;
    return true;
  }

  /// Lowest exponent over the nonzero entries of row i (0 for a zero row).
  int row_low_exponent(int i) const {
    int low = INT_MAX;
    for (int j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero()) low = std::min(low, (*this)(i, j).low_exponent());
    return low == INT_MAX ? 0 : low;
  }

  /// Highest exponent over the nonzero entries of row i (0 for a zero row).
  int row_high_exponent(int i) const {
    int high = INT_MIN;
    for (int j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero()) high = std::max(high, (*this)(i, j).high_exponent());
    return high == INT_MIN ? 0 : high;
  }

  int low_exponent() const {
    int low = INT_MAX;
    for (int i = 0; i < rows_; ++i)
      if (!row_is_zero(i)) low = std::min(low, row_low_exponent(i));
    return low == INT_MAX ? 0 : low;
  }

  int high_exponent() const {
    int high = INT_MIN;
    for (int i = 0; i < rows_; ++i)
      if (!row_is_zero(i)) high = std::max(high, row_high_exponent(i));
    return high == INT_MIN ? 0 : high;
  }

  /// Coefficient matrix of z^k as doubles.
  Eigen::MatrixXd coefficient_matrix(int k) const {
    Eigen::MatrixXd c(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) c(i, j) = to_double((*this)(i, j).coefficient(k));
    return c;
  }

  Eigen::MatrixXcd evaluate(std::complex<double> z) const {
    Eigen::MatrixXcd v(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) v(i, j) = (*this)(i, j).evaluate(z);
    return v;
  }

  LaurentMatrix transposed() const {
    LaurentMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// M*(z) = M^T(1/z).
  LaurentMatrix star() const {
    LaurentMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).star();
    return t;
  }

  /// Row i multiplied by z^k.
  void shift_row(int i, int k) {
    for (int j = 0; j < cols_; ++j) (*this)(i, j) = (*this)(i, j).shifted(k);
  }

  void scale_row(int i, const LaurentPolynomial& factor) {
    for (int j = 0; j < cols_; ++j) (*this)(i, j) = (*this)(i, j) * factor;
  }

  /// row target -= factor * row source.
  void subtract_row_multiple(int target, int source, const LaurentPolynomial& factor) {
    if (factor.is_zero()) return;
    for (int j = 0; j < cols_; ++j)
      if (!(*this)(source, j).is_zero()) (*this)(target, j) -= factor * (*this)(source, j);
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  LaurentMatrix row(int i) const {
    LaurentMatrix r(1, cols_);
    for (int j = 0; j < cols_; ++j) r(0, j) = (*this)(i, j);
    return r;
  }

  LaurentMatrix submatrix(const std::vector<int>& row_ids, const std::vector<int>& col_ids) const {
    LaurentMatrix s(static_cast<int>(row_ids.size()), static_cast<int>(col_ids.size()));
    for (std::size_t i = 0; i < row_ids.size(); ++i)
      for (std::size_t j = 0; j < col_ids.size(); ++j) s(i, j) = (*this)(row_ids[i], col_ids[j]);
    return s;
  }

  LaurentMatrix& operator+=(const LaurentMatrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
  }

  LaurentMatrix& operator-=(const LaurentMatrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
  }

  friend LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) { return a += b; }
  friend LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) { return a -= b; }

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch(std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                              " times " + std::to_string(b.rows_) + "x" +
                              std::to_string(b.cols_));
    LaurentMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const auto& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend LaurentMatrix operator*(const LaurentPolynomial& s, LaurentMatrix m) {
    for (auto& e : m.entries_) e = s * e;
    return m;
  }

  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * cols_ + static_cast<std::size_t>(j);
  }

  void require_same_shape(const LaurentMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw DimensionMismatch("operands have different shapes");
  }

  int rows_;
  int cols_;
  std::vector<LaurentPolynomial> entries_;
};

/// [top; bottom]
inline LaurentMatrix vstack(const LaurentMatrix& top, const LaurentMatrix& bottom) {
  if (top.cols() != bottom.cols())
    throw DimensionMismatch("vstack of matrices with different column counts");
  LaurentMatrix s(top.rows() + bottom.rows(), top.cols());
  for (int i = 0; i < top.rows(); ++i)
    for (int j = 0; j < top.cols(); ++j) s(i, j) = top(i, j);
  for (int i = 0; i < bottom.rows(); ++i)
    for (int j = 0; j < top.cols(); ++j) s(top.rows() + i, j) = bottom(i, j);
  return s;
}

namespace detail {

// Multiplies each nonzero row by z^-low(row) so all entries are ordinary
// polynomials. Returns the sum of the applied shifts' negation, i.e. the
// exponent k with det(M) = z^k det(result).
inline int normalize_rows(LaurentMatrix& m) {
  int total = 0;
  for (int i = 0; i < m.rows(); ++i) {
    if (m.row_is_zero(i)) continue;
    const int low = m.row_low_exponent(i);
    m.shift_row(i, -low);
    total += low;
  }
  return total;
}

inline LaurentPolynomial divide_or_throw(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("fraction-free elimination produced an inexact division");
  return *std::move(q);
}

// Fraction-free (Bareiss) row echelon reduction in place. Returns the rank
// and, for square input, sets *det to the determinant of the input.
inline int bareiss(LaurentMatrix& a, LaurentPolynomial* det) {
  const int p = a.rows();
  const int n = a.cols();
  int rank = 0;
  int sign = 1;
  LaurentPolynomial previous = Rational(1);
  for (int c = 0; c < n && rank < p; ++c) {
    int pivot = -1;
    for (int i = rank; i < p; ++i) {
      if (a(i, c).is_zero()) continue;
      // Prefer the shortest entry to limit growth.
      if (pivot < 0 || a(i, c).span() < a(pivot, c).span()) pivot = i;
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      a.swap_rows(pivot, rank);
      sign = -sign;
    }
    const LaurentPolynomial head = a(rank, c);
    for (int i = rank + 1; i < p; ++i) {
      const LaurentPolynomial factor = a(i, c);
      for (int j = c + 1; j < n; ++j)
        a(i, j) = divide_or_throw(head * a(i, j) - factor * a(rank, j), previous);
      a(i, c) = LaurentPolynomial();
    }
    previous = head;
    ++rank;
  }
  if (det) {
    if (rank < p || !a.is_square())
      *det = LaurentPolynomial();
    else
      *det = sign > 0 ? a(p - 1, n - 1) : -a(p - 1, n - 1);
  }
  return rank;
}

}  // namespace detail

/// Exact determinant by fraction-free elimination after shifting every row to
/// an ordinary polynomial row.
inline LaurentPolynomial determinant(const LaurentMatrix& m) {
  if (!m.is_square())
    throw NotSquare(std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  LaurentMatrix work = m;
  const int shift = detail::normalize_rows(work);
  LaurentPolynomial det;
  detail::bareiss(work, &det);
  return det.shifted(shift);
}

/// Rank over the field of rational functions, computed exactly.
inline int normal_rank(const LaurentMatrix& m) {
  LaurentMatrix work = m;
  detail::normalize_rows(work);
  return detail::bareiss(work, nullptr);
}

/// Randomized estimate of the normal rank: the numerical rank of M(z0) at
/// three points on the unit circle, maximized. Points are spaced by the
/// golden angle from a seeded random start. May undercount on an unlucky
/// draw; normal_rank is authoritative.
inline int normal_rank_sampled(const LaurentMatrix& m, std::uint64_t seed = 0x5eed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> start(0.0, 2.0 * std::numbers::pi);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double theta0 = start(rng);
  int best = 0;
  for (int draw = 0; draw < 3; ++draw) {
    const std::complex<double> z = std::polar(1.0, theta0 + draw * golden_angle);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.evaluate(z));
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) continue;
    const double threshold = sv(0) * 1e-9 * std::max(m.rows(), m.cols());
    int r = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) > threshold) ++r;
    best = std::max(best, r);
  }
  return best;
}

/// Square with a determinant that is a single nonzero term lambda z^k.
inline bool is_unimodular(const LaurentMatrix& m) {
  if (!m.is_square()) return false;
  return determinant(m).is_monomial();
}

/// Transposed cofactor matrix: adj(M) M = M adj(M) = det(M) I.
inline LaurentMatrix adjugate(const LaurentMatrix& m) {
  if (!m.is_square()) throw NotSquare("adjugate of a non-square matrix");
  const int n = m.rows();
  LaurentMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = Rational(1);
    return adj;
  }
  std::vector<int> rows_kept(n - 1);
  std::vector<int> cols_kept(n - 1);
  for (int i = 0; i < n; ++i) {
    for (int k = 0, t = 0; k < n; ++k)
      if (k != i) rows_kept[t++] = k;
    for (int j = 0; j < n; ++j) {
      for (int k = 0, t = 0; k < n; ++k)
        if (k != j) cols_kept[t++] = k;
      LaurentPolynomial minor = determinant(m.submatrix(rows_kept, cols_kept));
      adj(j, i) = ((i + j) % 2 == 0) ? minor : -minor;
    }
  }
  return adj;
}

/// Exact inverse of a unimodular matrix: adjugate over the monomial
/// determinant.
inline LaurentMatrix unimodular_inverse(const LaurentMatrix& u) {
  if (!u.is_square()) throw NotUnimodular("matrix is not square");
  const LaurentPolynomial det = determinant(u);
  if (!det.is_monomial()) throw NotUnimodular("determinant is not a monomial");
  const LaurentPolynomial inverse_det =
      LaurentPolynomial::monomial(Rational(1 / det.leading_coefficient()), -det.low_exponent());
  return inverse_det * adjugate(u);
}

}  // namespace ltiproc
