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

#include <Eigen/Eigenvalues>

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "ltiproc/laurent_polynomial.hpp"

namespace ltiproc {

using Complex = std::complex<double>;

inline Complex horner(std::span<const double> coeffs, Complex z) {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// Roots of c_0 + c_1 z + ... + c_d z^d (c_d != 0) as eigenvalues of the
/// companion matrix, each refined by a few Newton steps on the original
/// coefficients.
inline std::vector<Complex> polynomial_roots(std::span<const double> coeffs) {
  std::size_t size = coeffs.size();
  while (size > 0 && coeffs[size - 1] == 0.0) --size;
  if (size <= 1) return {};
  const int degree = static_cast<int>(size) - 1;
  const double lead = coeffs[degree];

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[i] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);

  std::vector<double> derivative(degree);
  for (int i = 1; i <= degree; ++i) derivative[i - 1] = i * coeffs[i];
  const std::span<const double> poly = coeffs.first(size);

  std::vector<Complex> roots;
  roots.reserve(degree);
  for (int i = 0; i < degree; ++i) {
    Complex r = solver.eigenvalues()(i);
    for (int step = 0; step < 3; ++step) {
      const Complex f = horner(poly, r);
      const Complex df = horner(derivative, r);
      if (df == 0.0) break;
      const Complex next = r - f / df;
      if (std::abs(horner(poly, next)) >= std::abs(f)) break;
      r = next;
    }
    roots.push_back(r);
  }
  return roots;
}

/// Square-free decomposition of the part of p free of powers of z:
/// p = unit * prod s_i^i with each s_i monic, square-free, with nonzero
/// constant term. Factors of multiplicity i are returned as (s_i, i).
inline std::vector<std::pair<LaurentPolynomial, int>> squarefree_factors(
    const LaurentPolynomial& p) {
  std::vector<std::pair<LaurentPolynomial, int>> out;
  if (p.is_zero()) return out;
  const LaurentPolynomial f = split_unit(p).core;
  if (f.span() == 0) return out;
  const auto& c = f.coefficients();
  std::vector<Rational> derivative;
  for (std::size_t i = 1; i < c.size(); ++i) derivative.push_back(c[i] * static_cast<long>(i));
  LaurentPolynomial a = gcd(f, LaurentPolynomial(0, std::move(derivative)));
  LaurentPolynomial b = split_unit(*exact_divide(f, a)).core;
  for (int multiplicity = 1; b.span() > 0; ++multiplicity) {
    LaurentPolynomial g = gcd(a, b);
    a = split_unit(*exact_divide(a, g)).core;
    LaurentPolynomial s = split_unit(*exact_divide(b, g)).core;
    if (s.span() > 0) out.emplace_back(std::move(s), multiplicity);
    b = std::move(g);
  }
  return out;
}

/// Nonzero roots of a Laurent polynomial, repeated by multiplicity. Repeated
/// roots are separated exactly first so each numerical solve sees simple roots.
inline std::vector<Complex> laurent_roots(const LaurentPolynomial& p) {
  std::vector<Complex> roots;
  for (const auto& [factor, multiplicity] : squarefree_factors(p)) {
    std::vector<double> coeffs;
    coeffs.reserve(factor.coefficients().size());
    for (const auto& c : factor.coefficients()) coeffs.push_back(to_double(c));
    for (const Complex& r : polynomial_roots(coeffs))
      roots.insert(roots.end(), multiplicity, r);
  }
  return roots;
}

/// Real coefficients (index = power) of prod (z - r_i); the roots must be
/// closed under conjugation.
inline std::vector<double> polynomial_from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  std::vector<double> real(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) real[i] = c[i].real();
  return real;
}

}  // namespace ltiproc
