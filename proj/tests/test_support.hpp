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

// Random generators and brute-force oracles shared by the test suites. The
// oracles only use polynomial arithmetic; none of them calls the elimination,
// Hermite or rank code they are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ltiproc/ltiproc.hpp"

namespace ltiproc::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// k / denominator with |k| < denominator, so the value lies in (-1, 1).
inline Rational random_unit_rational(Rng& rng, int denominator = 10) {
  return make_rational(uniform_int(rng, -(denominator - 1), denominator - 1), denominator);
}

/// Nonzero small rational p/q.
inline Rational random_nonzero_rational(Rng& rng) {
  int p = 0;
  while (p == 0) p = uniform_int(rng, -5, 5);
  return make_rational(p, uniform_int(rng, 1, 4));
}

inline LaurentPolynomial random_polynomial(Rng& rng, int low, int high, double zero_chance = 0.3) {
  std::vector<Rational> c;
  for (int e = low; e <= high; ++e) {
    if (std::uniform_real_distribution<double>(0, 1)(rng) < zero_chance)
      c.emplace_back(0);
    else
      c.push_back(make_rational(uniform_int(rng, -6, 6), uniform_int(rng, 1, 3)));
  }
  return LaurentPolynomial(low, std::move(c));
}

inline LaurentMatrix random_matrix(Rng& rng, int rows, int cols, int max_degree,
                                   bool laurent = true, double zero_entry_chance = 0.2) {
  LaurentMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if (std::uniform_real_distribution<double>(0, 1)(rng) < zero_entry_chance) continue;
      const int low = laurent ? uniform_int(rng, -2, 1) : 0;
      m(i, j) = random_polynomial(rng, low, low + uniform_int(rng, 0, max_degree));
    }
  return m;
}

/// Product of `steps` elementary unimodular factors: row swaps, scalings by
/// lambda z^k, and additions of a polynomial multiple of one row to another.
inline LaurentMatrix random_unimodular(Rng& rng, int n, int steps = 4, int max_degree = 2) {
  LaurentMatrix u = LaurentMatrix::identity(n);
  for (int s = 0; s < steps; ++s) {
    LaurentMatrix e = LaurentMatrix::identity(n);
    const int kind = n == 1 ? 1 : uniform_int(rng, 0, 2);
    const int i = uniform_int(rng, 0, n - 1);
    if (kind == 0) {
      const int j = (i + uniform_int(rng, 1, n - 1)) % n;
      e(i, i) = LaurentPolynomial();
      e(j, j) = LaurentPolynomial();
      e(i, j) = Rational(1);
      e(j, i) = Rational(1);
    } else if (kind == 1) {
      e(i, i) = LaurentPolynomial::monomial(random_nonzero_rational(rng), uniform_int(rng, -2, 2));
    } else {
      const int j = (i + uniform_int(rng, 1, n - 1)) % n;
      const int low = uniform_int(rng, -1, 1);
      e(i, j) = random_polynomial(rng, low, low + uniform_int(rng, 0, max_degree), 0.0);
    }
    u = e * u;
  }
  return u;
}

/// Leibniz expansion over all permutations.
inline LaurentPolynomial leibniz_determinant(const LaurentMatrix& m) {
  const int n = m.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  LaurentPolynomial det;
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    LaurentPolynomial term = Rational(inversions % 2 == 0 ? 1 : -1);
    for (int r = 0; r < n; ++r) term *= m(r, perm[r]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

/// Coefficients (c1, c0) of det [[z+a1, z+b1],[z+b2, z+a2]] = c1 z + c0,
/// expanded by hand.
struct PairDeterminant {
  Rational linear;
  Rational constant;
};

inline PairDeterminant pair_determinant(const Rational& a1, const Rational& b1,
                                        const Rational& a2, const Rational& b2) {
  // (z+a1)(z+a2) - (z+b1)(z+b2)
  return {a1 + a2 - b1 - b2, a1 * a2 - b1 * b2};
}

inline LaurentMatrix linear_row(const Rational& a, const Rational& b) {
  LaurentMatrix r(1, 2);
  r(0, 0) = LaurentPolynomial(0, {a, Rational(1)});
  r(0, 1) = LaurentPolynomial(0, {b, Rational(1)});
  return r;
}

struct PairTuple {
  Rational a1, a2, b1, b2;
};

/// Parameter tuples in (-1, 1)^4. Small denominators make coincident sums and
/// products (singular or monomial stacked determinants) common.
inline std::vector<PairTuple> pair_sweep(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<PairTuple> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const int den = (i % 3 == 0) ? 4 : 10;
    PairTuple t{random_unit_rational(rng, den), random_unit_rational(rng, den),
                    random_unit_rational(rng, den), random_unit_rational(rng, den)};
    const Rational cancel = t.a1 + t.a2 - t.b1;
    if (i % 5 == 0 && abs(cancel) < 1) t.b2 = cancel;  // linear term cancels
    if (i % 7 == 0) t.b1 = t.a2, t.b2 = t.a1;   // swapped, determinant identically zero
    out.push_back(t);
  }
  return out;
}

/// Polynomial with the given real roots and complex pairs (re +- j im),
/// written in powers of z: prod (z - r).
inline LaurentPolynomial polynomial_with_roots(const std::vector<Rational>& real_roots,
                                               const std::vector<std::pair<Rational, Rational>>& pairs) {
  LaurentPolynomial p = Rational(1);
  for (const auto& r : real_roots) p *= LaurentPolynomial(0, {Rational(-r), Rational(1)});
  for (const auto& [re, im] : pairs)
    p *= LaurentPolynomial(0, {Rational(re * re + im * im), Rational(-2 * re), Rational(1)});
  return p;
}

/// Monic polynomial of degree `degree` with every root of modulus <= 0.9.
inline LaurentPolynomial random_stable_polynomial(Rng& rng, int degree) {
  std::vector<Rational> real_roots;
  std::vector<std::pair<Rational, Rational>> pairs;
  int remaining = degree;
  while (remaining > 0) {
    if (remaining >= 2 && uniform_int(rng, 0, 1) == 1) {
      // |re|, |im| <= 0.6 keeps the modulus below 0.85.
      pairs.emplace_back(make_rational(uniform_int(rng, -6, 6), 10),
                         make_rational(uniform_int(rng, 1, 6), 10));
      remaining -= 2;
    } else {
      real_roots.push_back(make_rational(uniform_int(rng, -9, 9), 10));
      remaining -= 1;
    }
  }
  return polynomial_with_roots(real_roots, pairs);
}

/// Scalar factor N / D in minimum-phase normal form: N and D are polynomials
/// in z^-1 with nonzero constant terms, all roots inside the unit disc, no
/// common root, deg N + deg D <= max_degree and w(1) > 0.
inline std::pair<LaurentPolynomial, LaurentPolynomial> random_minimum_phase_factor(
    Rng& rng, int max_degree = 6) {
  for (;;) {
    const int num_degree = uniform_int(rng, 0, max_degree);
    const int den_degree = uniform_int(rng, 0, max_degree - num_degree);
    LaurentPolynomial num = random_stable_polynomial(rng, num_degree);
    LaurentPolynomial den = random_stable_polynomial(rng, den_degree);
    if (gcd(num, den).span() > 0) continue;
    num = num * LaurentPolynomial(random_nonzero_rational(rng));
    if (num.evaluate(1.0).real() * den.evaluate(1.0).real() < 0.0) num = num * LaurentPolynomial(Rational(-1));
    const UnitSplit n = split_unit(num);
    const UnitSplit d = split_unit(den);
    return {n.core.shifted(-n.core.span()) * n.lambda, d.core.shifted(-d.core.span())};
  }
}

/// Coefficients of a scalar N / D rescaled so that D is monic with top
/// exponent 0; two representations of one rational function in lowest terms
/// then agree coefficient by coefficient.
struct NormalizedScalar {
  int low = 0;
  std::vector<double> num;
  std::vector<double> den;
};

inline NormalizedScalar normalize_scalar(const LaurentPolynomial& n, const LaurentPolynomial& d) {
  const double lead = to_double(d.leading_coefficient());
  NormalizedScalar out{n.low_exponent() - d.high_exponent(), {}, {}};
  for (const auto& x : n.coefficients()) out.num.push_back(to_double(x) / lead);
  for (const auto& x : d.coefficients()) out.den.push_back(to_double(x) / lead);
  return out;
}

inline double max_coefficient_error(const NormalizedScalar& a, const NormalizedScalar& b) {
  if (a.den.size() != b.den.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.den.size(); ++i) worst = std::max(worst, std::abs(a.den[i] - b.den[i]));
  const int low = std::min(a.low, b.low);
  const int high = std::max(a.low + static_cast<int>(a.num.size()),
                            b.low + static_cast<int>(b.num.size()));
  auto at = [](const NormalizedScalar& s, int e) {
    const int i = e - s.low;
    return (i >= 0 && i < static_cast<int>(s.num.size())) ? s.num[i] : 0.0;
  };
  for (int e = low; e < high; ++e) worst = std::max(worst, std::abs(at(a, e) - at(b, e)));
  return worst;
}

/// Square kernel whose determinant has all roots inside the unit disc:
/// a lower-triangular matrix with stable diagonal times a random unimodular
/// matrix.
inline LaurentMatrix random_stable_kernel(Rng& rng, int n, int max_degree = 2) {
  LaurentMatrix lower(n, n);
  for (int i = 0; i < n; ++i) {
    lower(i, i) = random_stable_polynomial(rng, uniform_int(rng, 0, max_degree)) *
                  random_nonzero_rational(rng);
    for (int j = 0; j < i; ++j) lower(i, j) = random_polynomial(rng, 0, uniform_int(rng, 0, 1));
  }
  return lower * random_unimodular(rng, n, 2, 1);
}

/// Oracle for R1 = U R2 with U unimodular, for full-row-rank m x n R1, R2:
/// take the first m columns J with det R2[:, J] != 0, form
/// U = R1[:, J] adj(R2[:, J]) / det R2[:, J] by exact division, and check that
/// U is a Laurent matrix with monomial determinant and U R2 = R1.
inline bool equivalence_oracle(const LaurentMatrix& r1, const LaurentMatrix& r2) {
  const int m = r2.rows();
  const int n = r2.cols();
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + m, true);
  std::vector<int> cols;
  LaurentPolynomial det;
  do {
    cols.clear();
    for (int j = 0; j < n; ++j)
      if (pick[j]) cols.push_back(j);
    std::vector<int> rows(m);
    std::iota(rows.begin(), rows.end(), 0);
    det = leibniz_determinant(r2.submatrix(rows, cols));
    if (!det.is_zero()) break;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (det.is_zero()) return false;

  std::vector<int> rows(m);
  std::iota(rows.begin(), rows.end(), 0);
  const LaurentMatrix square = r2.submatrix(rows, cols);
  LaurentMatrix adj(m, m);
  if (m == 1) {
    adj(0, 0) = Rational(1);
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        std::vector<int> rr, cc;
        for (int k = 0; k < m; ++k) {
          if (k != j) rr.push_back(k);
          if (k != i) cc.push_back(k);
        }
        const LaurentPolynomial minor = leibniz_determinant(square.submatrix(rr, cc));
        adj(i, j) = (i + j) % 2 == 0 ? minor : -minor;
      }
  }
  const LaurentMatrix numerator = r1.submatrix(rows, cols) * adj;
  LaurentMatrix u(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto q = exact_divide(numerator(i, j), det);
      if (!q) return false;
      u(i, j) = *q;
    }
  return leibniz_determinant(u).is_monomial() && u * r2 == r1;
}

}  // namespace ltiproc::testing
