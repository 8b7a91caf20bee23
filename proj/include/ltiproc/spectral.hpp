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
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ltiproc/behavior.hpp"
#include "ltiproc/errors.hpp"
#include "ltiproc/laurent_matrix.hpp"
#include "ltiproc/roots.hpp"

namespace ltiproc {

/// N(z) / d(z) with N a Laurent matrix and d a nonzero Laurent polynomial.
///
/// The denominator is kept as a monic ordinary polynomial with nonzero
/// constant term (its unit factor is moved into the numerator). With
/// reduce = true the gcd of d and all entries of N is divided out.
class RationalMatrix {
 public:
  RationalMatrix(LaurentMatrix numerator, LaurentPolynomial denominator, bool reduce = true)
      : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    if (denominator_.is_zero()) throw ZeroMatrix("rational matrix with zero denominator");
    const UnitSplit split = split_unit(denominator_);
    numerator_ =
        LaurentPolynomial::monomial(Rational(1 / split.lambda), -split.shift) * numerator_;
    denominator_ = split.core;
    if (reduce && denominator_.span() > 0) {
      LaurentPolynomial g = denominator_;
      for (int i = 0; i < numerator_.rows() && g.span() > 0; ++i)
        for (int j = 0; j < numerator_.cols() && g.span() > 0; ++j)
          g = gcd(g, numerator_(i, j));
      if (g.span() > 0) {
        denominator_ = *exact_divide(denominator_, g);
        for (int i = 0; i < numerator_.rows(); ++i)
          for (int j = 0; j < numerator_.cols(); ++j)
            numerator_(i, j) = *exact_divide(numerator_(i, j), g);
        denominator_ = split_unit(denominator_).core;  // g monic: already monic
      }
    }
  }

  /// A Laurent matrix viewed as a rational matrix with denominator 1.
  explicit RationalMatrix(LaurentMatrix polynomial)
      : RationalMatrix(std::move(polynomial), LaurentPolynomial(Rational(1)), false) {}

  int rows() const { return numerator_.rows(); }
  int cols() const { return numerator_.cols(); }
  const LaurentMatrix& numerator() const { return numerator_; }
  const LaurentPolynomial& denominator() const { return denominator_; }

  Eigen::MatrixXcd evaluate(Complex z, double singular_tolerance = 1e-12) const {
    const Complex d = denominator_.evaluate(z);
    if (std::abs(d) < singular_tolerance)
      throw EvaluationSingular("denominator vanishes at z = " + std::to_string(z.real()) +
                               (z.imag() < 0 ? "" : "+") + std::to_string(z.imag()) + "i");
    return numerator_.evaluate(z) / d;
  }

  /// W*(z) = W^T(1/z).
  RationalMatrix star(bool reduce = true) const {
    return RationalMatrix(numerator_.star(), denominator_.star(), reduce);
  }

  friend RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b,
                                 bool reduce = true) {
    return RationalMatrix(a.numerator_ * b.numerator_, a.denominator_ * b.denominator_, reduce);
  }

 private:
  LaurentMatrix numerator_;
  LaurentPolynomial denominator_;
};

namespace detail {

inline double max_root_modulus(const LaurentPolynomial& p) {
  double m = 0.0;
  for (const Complex& r : laurent_roots(p)) m = std::max(m, std::abs(r));
  return m;
}

}  // namespace detail

/// Square rational W of full normal rank whose finite poles and zeros lie in
/// the open unit disc, so W and W^-1 are analytic in |z| > 1.
///
/// exact() records whether the coefficients are exact data (true) or carry
/// floating-point error from a numerical factorization (false); the
/// equivalence test picks its divisibility criterion from it.
class SpectralFactor {
 public:
  explicit SpectralFactor(RationalMatrix value, bool exact = true)
      : value_(std::move(value)), exact_(exact) {
    if (value_.rows() != value_.cols())
      throw NotSquare("spectral factor must be square");
    const LaurentPolynomial det = determinant(value_.numerator());
    if (det.is_zero()) throw SingularFactor("spectral factor is not of full normal rank");
    constexpr double kStrictlyInside = 1.0 - 1e-9;
    if (detail::max_root_modulus(value_.denominator()) >= kStrictlyInside)
      throw UnstableFactor("pole outside the open unit disc");
    if (detail::max_root_modulus(det) >= kStrictlyInside)
      throw UnstableFactor("zero outside the open unit disc");
  }

  const RationalMatrix& value() const { return value_; }
  int dimension() const { return value_.rows(); }
  bool exact() const { return exact_; }

 private:
  RationalMatrix value_;
  bool exact_;
};

/// Phi = W W*, held through its factor.
class SpectralDensity {
 public:
  explicit SpectralDensity(SpectralFactor factor) : factor_(std::move(factor)) {}

  const SpectralFactor& factor() const { return factor_; }
  int dimension() const { return factor_.dimension(); }
  bool is_scalar() const { return dimension() == 1; }

  /// The expanded density W W* as a rational matrix.
  RationalMatrix expanded() const {
    return multiply(factor_.value(), factor_.value().star(factor_.exact()), factor_.exact());
  }

 private:
  SpectralFactor factor_;
};

/// Density of the output of R(sigma) w = e for unit white noise e:
/// Phi = R^-1 R^-*, with factor W = R^-1 = adj(R) / det(R).
inline SpectralDensity density_from_kernel(const KernelRepresentation& k) {
  if (k.m() != k.n())
    throw NotSquare("kernel is " + std::to_string(k.m()) + "x" + std::to_string(k.n()));
  const LaurentPolynomial det = determinant(k.matrix());
  for (const Complex& r : laurent_roots(det)) {
    const double modulus = std::abs(r);
    if (std::abs(modulus - 1.0) <= 1e-9)
      throw CircleRoot("det R has a root on the unit circle at |z| = " + std::to_string(modulus));
    if (modulus > 1.0)
      throw UnstableKernel("det R has a root outside the unit disc at |z| = " +
                           std::to_string(modulus));
  }
  return SpectralDensity(SpectralFactor(RationalMatrix(adjugate(k.matrix()), det)));
}

/// Uniform frequency grid theta_k = 2 pi k / size.
inline std::vector<double> frequency_grid(int size) {
  std::vector<double> theta(size);
  for (int k = 0; k < size; ++k) theta[k] = 2.0 * std::numbers::pi * k / size;
  return theta;
}

/// Phi(e^{j theta_k}) = W W^H on the uniform grid of grid_size points.
inline std::vector<Eigen::MatrixXcd> density_eval(const SpectralDensity& d, int grid_size) {
  if (grid_size < 2) throw InvalidArgument("grid size must be at least 2");
  std::vector<Eigen::MatrixXcd> values;
  values.reserve(grid_size);
  for (double theta : frequency_grid(grid_size)) {
    const Eigen::MatrixXcd w = d.factor().value().evaluate(std::polar(1.0, theta));
    values.push_back(w * w.adjoint());
  }
  return values;
}

/// Scalar density values on the uniform grid.
inline std::vector<double> density_values(const SpectralDensity& d, int grid_size) {
  if (!d.is_scalar()) throw NotScalar("density is " + std::to_string(d.dimension()) + "x" +
                                      std::to_string(d.dimension()));
  std::vector<double> out;
  out.reserve(grid_size);
  for (const auto& m : density_eval(d, grid_size)) out.push_back(m(0, 0).real());
  return out;
}

namespace detail {

inline std::string format_scientific(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3e", x);
  return buffer;
}

inline std::vector<double> to_doubles(const LaurentPolynomial& p) {
  std::vector<double> out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.push_back(to_double(c));
  return out;
}

inline LaurentPolynomial from_doubles(int low, std::span<const double> coeffs) {
  std::vector<Rational> exact;
  exact.reserve(coeffs.size());
  for (double c : coeffs) exact.push_back(rational_from_double(c));
  return LaurentPolynomial(low, std::move(exact));
}

inline std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

struct StableHalf {
  std::vector<double> polynomial;  // prod (z - r) over roots inside the disc
  int inside_count = 0;
};

inline StableHalf stable_half(const LaurentPolynomial& p) {
  StableHalf half;
  std::vector<Complex> inside;
  int outside = 0;
  for (const Complex& r : laurent_roots(p)) {
    const double modulus = std::abs(r);
    if (std::abs(modulus - 1.0) <= 1e-8)
      throw RootOnCircle("root at |z| = " + std::to_string(modulus));
    if (modulus < 1.0)
      inside.push_back(r);
    else
      ++outside;
  }
  if (static_cast<int>(inside.size()) != outside)
    throw NotParahermitian("roots are not paired as (r, 1/conj(r))");
  half.polynomial = polynomial_from_roots(inside);
  half.inside_count = static_cast<int>(inside.size());
  return half;
}

}  // namespace detail

/// Minimum-phase factor of a scalar parahermitian density phi, coercive on
/// the unit circle.
///
/// Numerator and denominator roots come in pairs (r, 1/conj(r)); the member
/// of each pair inside the disc goes into the factor. The result is written
/// in powers of 1/z (e.g. 1 - 0.5/z), with a positive gain fixed by
/// phi(1) = w(1)^2, w(1) > 0. The expansion w w* is checked against phi
/// coefficient-wise to within match_tolerance (relative to the largest
/// coefficient).
inline SpectralFactor scalar_spectral_factor(const RationalMatrix& phi,
                                             double match_tolerance = 1e-9) {
  if (phi.rows() != 1 || phi.cols() != 1)
    throw NotScalar("density is " + std::to_string(phi.rows()) + "x" +
                    std::to_string(phi.cols()));
  const LaurentPolynomial& num0 = phi.numerator()(0, 0);
  const LaurentPolynomial& den0 = phi.denominator();
  if (num0.is_zero()) throw NotCoercive("density is identically zero");
  if (!(num0.star() * den0 == num0 * den0.star()))
    throw NotParahermitian("phi*(z) differs from phi(z)");

  for (double theta : frequency_grid(512)) {
    const Complex z = std::polar(1.0, theta);
    const Complex d = den0.evaluate(z);
    if (std::abs(d) < 1e-12) throw NotCoercive("pole on the unit circle");
    const Complex v = num0.evaluate(z) / d;
    if (!(v.real() > 0.0)) throw NotCoercive("density is not positive at theta = " +
                                             std::to_string(theta));
  }

  // Cancel common factors before pairing roots.
  const LaurentPolynomial g = gcd(num0, den0);
  const LaurentPolynomial num = *exact_divide(num0, g);
  const LaurentPolynomial den = *exact_divide(den0, g);

  const detail::StableHalf top = detail::stable_half(num);
  const detail::StableHalf bottom = detail::stable_half(den);

  const double phi_at_one = (num.evaluate(1.0) / den.evaluate(1.0)).real();
  const double a_top = horner(top.polynomial, 1.0).real();
  const double a_bottom = horner(bottom.polynomial, 1.0).real();
  const double gain_squared = phi_at_one * a_bottom * a_bottom / (a_top * a_top);
  if (!(gain_squared > 0.0)) throw NotCoercive("density has non-positive gain");
  const double gain = std::sqrt(gain_squared);

  std::vector<double> scaled_top = top.polynomial;
  for (double& c : scaled_top) c *= gain;

  // Verify w w* == phi by cross-multiplication: (a a*) den == num (b b*).
  auto reversed = [](std::vector<double> v) {
    std::reverse(v.begin(), v.end());
    return v;
  };
  const auto lhs = detail::convolve(detail::convolve(scaled_top, reversed(scaled_top)),
                                    detail::to_doubles(den));
  const auto rhs = detail::convolve(
      detail::to_doubles(num),
      detail::convolve(bottom.polynomial, reversed(bottom.polynomial)));
  // Both sides are dense vectors aligned at their lowest exponent: lhs starts
  // at -deg(a) + low(den), rhs at low(num) - deg(b).
  const int lhs_low = -top.inside_count + den.low_exponent();
  const int rhs_low = num.low_exponent() - bottom.inside_count;
  const int low = std::min(lhs_low, rhs_low);
  const int high = std::max(lhs_low + static_cast<int>(lhs.size()),
                            rhs_low + static_cast<int>(rhs.size()));
  double scale = 0.0;
  double worst = 0.0;
  for (int e = low; e < high; ++e) {
    const int i = e - lhs_low;
    const int j = e - rhs_low;
    const double l = (i >= 0 && i < static_cast<int>(lhs.size())) ? lhs[i] : 0.0;
    const double r = (j >= 0 && j < static_cast<int>(rhs.size())) ? rhs[j] : 0.0;
    scale = std::max(scale, std::abs(r));
    worst = std::max(worst, std::abs(l - r));
  }
  if (worst > match_tolerance * scale)
    throw NumericError("spectral factor does not reproduce the density (relative mismatch " +
                       detail::format_scientific(worst / scale) + ")");

  LaurentMatrix numerator(1, 1);
  numerator(0, 0) = detail::from_doubles(-top.inside_count, scaled_top);
  LaurentPolynomial denominator = detail::from_doubles(-bottom.inside_count, bottom.polynomial);
  return SpectralFactor(RationalMatrix(std::move(numerator), std::move(denominator), false),
                        /*exact=*/false);
}

inline SpectralFactor scalar_spectral_factor(const SpectralDensity& d,
                                             double match_tolerance = 1e-9) {
  return scalar_spectral_factor(d.expanded(), match_tolerance);
}

/// Relative tolerance for the floating-point branch of unimodular_equivalent.
inline constexpr double kEquivalenceTolerance = 1e-9;

/// W1 = W2 V for a unimodular Laurent matrix V.
///
/// V = W2^-1 W1 = d2 adj(N2) N1 / (det(N2) d1). Exact factors require every
/// entry to divide with zero remainder and det V to be a monomial. When either
/// factor carries floating-point coefficients the remainders and the non-
/// leading terms of det V only have to be small relative to their operands.
inline bool unimodular_equivalent(const SpectralFactor& w1, const SpectralFactor& w2) {
  if (w1.dimension() != w2.dimension())
    throw DimensionMismatch(std::to_string(w1.dimension()) + " vs " +
                            std::to_string(w2.dimension()));
  const LaurentMatrix& n1 = w1.value().numerator();
  const LaurentMatrix& n2 = w2.value().numerator();
  const LaurentPolynomial det2 = determinant(n2);
  if (det2.is_zero()) throw SingularFactor("second factor is singular");
  const LaurentPolynomial divisor = det2 * w1.value().denominator();
  const LaurentMatrix dividend = w2.value().denominator() * (adjugate(n2) * n1);
  const bool exact = w1.exact() && w2.exact();

  auto max_abs = [](const LaurentPolynomial& p) {
    double m = 0.0;
    for (const auto& c : p.coefficients()) m = std::max(m, std::abs(to_double(c)));
    return m;
  };

  const int n = w1.dimension();
  LaurentMatrix v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto [q, r] = euclidean_divide(dividend(i, j), divisor);
      if (exact) {
        if (!r.is_zero()) return false;
      } else if (max_abs(r) > kEquivalenceTolerance * max_abs(dividend(i, j))) {
        return false;
      }
      v(i, j) = std::move(q);
    }
  const LaurentPolynomial det_v = determinant(v);
  if (exact) return det_v.is_monomial();
  if (det_v.is_zero()) return false;
  const double leading = max_abs(det_v);
  int dominant = 0;
  for (const auto& c : det_v.coefficients())
    if (std::abs(to_double(c)) > kEquivalenceTolerance * leading) ++dominant;
  return dominant == 1;
}

/// Factor of |u|^2 Phi-style transformations: W V for a Laurent matrix V.
inline SpectralFactor multiply_factor(const SpectralFactor& w, const LaurentMatrix& v) {
  return SpectralFactor(multiply(w.value(), RationalMatrix(v), w.exact()), w.exact());
}

/// Mean-removed log-spectral L2 distance between scalar densities:
/// sqrt(mean_k (r_k - mean r)^2), r_k = log Phi1(theta_k) - log Phi2(theta_k).
/// Unchanged when either density is multiplied by a positive constant.
inline double shape_distance(const SpectralDensity& phi1, const SpectralDensity& phi2,
                             int grid_size = 1024) {
  if (!phi1.is_scalar() || !phi2.is_scalar())
    throw NotScalar("shape distance is defined for scalar densities only");
  if (grid_size < 64) throw InvalidArgument("grid size must be at least 64");
  const std::vector<double> v1 = density_values(phi1, grid_size);
  const std::vector<double> v2 = density_values(phi2, grid_size);
  std::vector<double> r(grid_size);
  double mean = 0.0;
  for (int k = 0; k < grid_size; ++k) {
    r[k] = std::log(v1[k]) - std::log(v2[k]);
    mean += r[k];
  }
  mean /= grid_size;
  double sum = 0.0;
  for (double x : r) sum += (x - mean) * (x - mean);
  return std::sqrt(sum / grid_size);
}

}  // namespace ltiproc
