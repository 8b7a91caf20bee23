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

#include "ltiproc/laurent_matrix.hpp"

namespace ltiproc {

/// transform * input == canonical, transform unimodular.
struct HermiteResult {
  LaurentMatrix canonical;
  LaurentMatrix transform;
};

/// Row Hermite form over Q[z, 1/z].
///
/// Column by column, the rows below the current pivot position are reduced by
/// Euclidean division (on span) until a single nonzero entry is left. The
/// pivot is then normalized to a monic ordinary polynomial with nonzero
/// constant term (units of the ring are lambda z^k) and the entries above it
/// are replaced by their canonical residue modulo the pivot, i.e. an ordinary
/// polynomial of degree below the pivot degree. Zero rows end up at the
/// bottom. As a last step every nonzero row is shifted by z^-low(row) so the
/// output is an ordinary polynomial matrix; this is a fixed bijection on the
/// Laurent canonical forms, so U*M and M still share one canonical form for
/// every unimodular U.
inline HermiteResult hermite_form(const LaurentMatrix& m) {
  LaurentMatrix h = m;
  LaurentMatrix t = LaurentMatrix::identity(m.rows());
  const int p = m.rows();
  const int n = m.cols();

  auto swap = [&](int a, int b) {
    h.swap_rows(a, b);
    t.swap_rows(a, b);
  };
  auto subtract = [&](int target, int source, const LaurentPolynomial& f) {
    h.subtract_row_multiple(target, source, f);
    t.subtract_row_multiple(target, source, f);
  };

  int r = 0;
  for (int c = 0; c < n && r < p; ++c) {
    for (;;) {
      int best = -1;
      for (int i = r; i < p; ++i) {
        if (h(i, c).is_zero()) continue;
        if (best < 0 || h(i, c).span() < h(best, c).span()) best = i;
      }
      if (best < 0) break;
      swap(r, best);
      bool cleared = true;
      for (int i = r + 1; i < p; ++i) {
        if (h(i, c).is_zero()) continue;
        subtract(i, r, euclidean_divide(h(i, c), h(r, c)).first);
        if (!h(i, c).is_zero()) cleared = false;
      }
      if (cleared) break;
    }
    if (h(r, c).is_zero()) continue;

    const UnitSplit split = split_unit(h(r, c));
    const auto unit_inverse =
        LaurentPolynomial::monomial(Rational(1 / split.lambda), -split.shift);
    h.scale_row(r, unit_inverse);
    t.scale_row(r, unit_inverse);

    for (int k = 0; k < r; ++k) {
      if (h(k, c).is_zero()) continue;
      subtract(k, r, canonical_residue(h(k, c), h(r, c)).first);
    }
    ++r;
  }

  for (int i = 0; i < p; ++i) {
    if (h.row_is_zero(i)) continue;
    const int low = h.row_low_exponent(i);
    h.shift_row(i, -low);
    t.shift_row(i, -low);
  }
  return {std::move(h), std::move(t)};
}

/// Number of nonzero rows of a canonical form.
inline int nonzero_row_count(const LaurentMatrix& m) {
  int count = 0;
  for (int i = 0; i < m.rows(); ++i)
    if (!m.row_is_zero(i)) ++count;
  return count;
}

}  // namespace ltiproc
