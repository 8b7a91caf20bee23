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

#include <algorithm>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "ltiproc/errors.hpp"
#include "ltiproc/rational.hpp"

namespace ltiproc {

/// Finite sum c_l z^l + ... + c_h z^h with exact rational coefficients.
///
/// Stored trimmed: when nonzero, the first and last coefficients are nonzero.
/// The zero polynomial has no coefficients and low exponent 0.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;

  LaurentPolynomial(const Rational& constant)  // NOLINT: implicit on purpose
      : coeffs_{constant} {
    trim();
  }

  LaurentPolynomial(int low_exponent, std::vector<Rational> coefficients)
      : low_(low_exponent), coeffs_(std::move(coefficients)) {
    trim();
  }

  static LaurentPolynomial monomial(const Rational& coefficient, int exponent) {
    return LaurentPolynomial(exponent, {coefficient});
  }

  /// The indeterminate z.
  static LaurentPolynomial z() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  int low_exponent() const { return low_; }
  /// Highest exponent; equals low_exponent() - 1 for the zero polynomial.
  int high_exponent() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  /// high - low; the Euclidean size used by the Laurent division.
  int span() const { return static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational coefficient(int exponent) const {
    const int i = exponent - low_;
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[i];
  }

  const Rational& leading_coefficient() const { return coeffs_.back(); }
  const Rational& trailing_coefficient() const { return coeffs_.front(); }

  bool is_monomial() const { return coeffs_.size() == 1; }
  bool is_ordinary() const { return is_zero() || low_ >= 0; }

  /// Multiplication by z^k.
  LaurentPolynomial shifted(int k) const {
    LaurentPolynomial p = *this;
    if (!p.is_zero()) p.low_ += k;
    return p;
  }

  /// p(1/z): exponents negated.
  LaurentPolynomial star() const {
    if (is_zero()) return {};
    std::vector<Rational> reversed(coeffs_.rbegin(), coeffs_.rend());
    return LaurentPolynomial(-high_exponent(), std::move(reversed));
  }

  std::complex<double> evaluate(std::complex<double> z) const {
    if (is_zero()) return 0.0;
    // Horner from the top, then scale by z^low.
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * z + to_double(*it);
    return acc * std::pow(z, low_);
  }

  LaurentPolynomial operator-() const {
    LaurentPolynomial p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& other) {
    if (other.is_zero()) return *this;
    if (is_zero()) return *this = other;
    const int lo = std::min(low_, other.low_);
    const int hi = std::max(high_exponent(), other.high_exponent());
    std::vector<Rational> sum(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) sum[low_ - lo + i] = coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
      sum[other.low_ - lo + i] += other.coeffs_[i];
    low_ = lo;
    coeffs_ = std::move(sum);
    trim();
    return *this;
  }

  LaurentPolynomial& operator-=(const LaurentPolynomial& other) {
    return *this += -other;
  }

  LaurentPolynomial& operator*=(const Rational& scalar) {
    if (scalar == 0) return *this = LaurentPolynomial();
    for (auto& c : coeffs_) c *= scalar;
    return *this;
  }

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a += b;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a -= b;
  }
  friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& s) { return a *= s; }
  friend LaurentPolynomial operator*(const Rational& s, LaurentPolynomial a) { return a *= s; }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> product(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        product[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return LaurentPolynomial(a.low_ + b.low_, std::move(product));
  }

  LaurentPolynomial& operator*=(const LaurentPolynomial& other) {
    return *this = *this * other;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() {
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(),
                              [](const Rational& c) { return c != 0; });
    if (first == coeffs_.end()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    low_ += static_cast<int>(first - coeffs_.begin());
    coeffs_.erase(coeffs_.begin(), first);
    while (coeffs_.back() == 0) coeffs_.pop_back();
  }

  int low_ = 0;
  std::vector<Rational> coeffs_;
};

/// p = unit * core, with unit = lambda z^k and core an ordinary monic
/// polynomial with nonzero constant term. Requires p != 0.
struct UnitSplit {
  Rational lambda;
  int shift = 0;
  LaurentPolynomial core;
};

inline UnitSplit split_unit(const LaurentPolynomial& p) {
  if (p.is_zero()) throw ZeroMatrix("cannot normalize the zero polynomial");
  UnitSplit s;
  s.lambda = p.leading_coefficient();
  s.shift = p.low_exponent();
  s.core = p.shifted(-s.shift) * Rational(1 / s.lambda);
  return s;
}

namespace detail {

// Ordinary-polynomial long division on coefficient vectors (index = power).
inline std::pair<std::vector<Rational>, std::vector<Rational>> poly_divmod(
    std::vector<Rational> a, const std::vector<Rational>& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {{}, std::move(a)};
  std::vector<Rational> q(a.size() - db);
  const Rational inv_lead = 1 / b.back();
  for (std::size_t k = a.size(); k-- > db;) {
    if (a[k] == 0) continue;
    const Rational factor = a[k] * inv_lead;
    q[k - db] = factor;
    for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= factor * b[j];
  }
  a.resize(db);
  return {std::move(q), std::move(a)};
}

}  // namespace detail

/// Division with remainder in Q[z, 1/z]: a = q b + r with r = 0 or
/// span(r) < span(b). Requires b != 0.
inline std::pair<LaurentPolynomial, LaurentPolynomial> euclidean_divide(
    const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (b.is_zero()) throw ZeroMatrix("division by the zero polynomial");
  if (a.is_zero()) return {{}, {}};
  const int la = a.low_exponent();
  const int lb = b.low_exponent();
  auto [q, r] = detail::poly_divmod(a.coefficients(), b.coefficients());
  return {LaurentPolynomial(la - lb, std::move(q)), LaurentPolynomial(la, std::move(r))};
}

/// Quotient a / b when b divides a in Q[z, 1/z], otherwise nullopt.
inline std::optional<LaurentPolynomial> exact_divide(const LaurentPolynomial& a,
                                                     const LaurentPolynomial& b) {
  if (b.is_zero()) throw ZeroMatrix("division by the zero polynomial");
  if (a.is_zero()) return LaurentPolynomial();
  auto [q, r] = euclidean_divide(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

/// Remainder and quotient of a modulo b with the remainder reduced to a
/// canonical representative: an ordinary polynomial of degree < span(b).
/// a = q b + r holds exactly.
inline std::pair<LaurentPolynomial, LaurentPolynomial> canonical_residue(
    const LaurentPolynomial& a, const LaurentPolynomial& b) {
  const UnitSplit split = split_unit(b);
  const LaurentPolynomial& core = split.core;
  if (core.span() == 0 || a.is_zero()) {
    auto q = exact_divide(a, b);
    return {*q, {}};
  }
  // z^-1 mod core: core = z s(z) + c0, so z * (-s / c0) == 1.
  const Rational c0 = core.trailing_coefficient();
  const LaurentPolynomial s = (core - LaurentPolynomial(c0)).shifted(-1);
  const LaurentPolynomial z_inverse = s * Rational(-1 / c0);

  // Reduces an ordinary polynomial modulo core.
  auto reduce = [&core](const LaurentPolynomial& p) {
    if (p.is_zero()) return p;
    std::vector<Rational> dense(static_cast<std::size_t>(p.low_exponent()));
    dense.insert(dense.end(), p.coefficients().begin(), p.coefficients().end());
    return LaurentPolynomial(0, detail::poly_divmod(std::move(dense), core.coefficients()).second);
  };
  LaurentPolynomial r;
  const int low = a.low_exponent();
  if (low >= 0) {
    r = reduce(a);
  } else {
    r = reduce(a.shifted(-low));
    for (int i = 0; i < -low; ++i) r = reduce(r * z_inverse);
  }
  auto q = exact_divide(a - r, b);
  return {*q, r};
}

/// Monic, ordinary, nonzero-constant-term gcd in Q[z, 1/z]; gcd(0, 0) = 0.
inline LaurentPolynomial gcd(LaurentPolynomial a, LaurentPolynomial b) {
  while (!b.is_zero()) {
    auto r = euclidean_divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return split_unit(a).core;
}

}  // namespace ltiproc
