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

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace ltiproc {

/// Exact rational number. GMP keeps it in lowest terms with a positive
/// denominator; zero is 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long numerator, long denominator = 1) {
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

/// Exact value of a finite double (every double is a dyadic rational).
inline Rational rational_from_double(double value) { return Rational(value); }

/// Nearest double (ties to even). mpq_class::get_d truncates instead.
inline double to_double(const Rational& q) {
  if (q == 0) return 0.0;
  Integer num = abs(q.get_num());
  Integer den = q.get_den();
  // Scale so the integer quotient has 54 or 55 bits, then fold the remainder
  // into a sticky bit below the rounding position.
  const long shift = 55 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
  if (shift > 0)
    num <<= shift;
  else
    den <<= -shift;
  Integer quotient, remainder;
  mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (remainder != 0) quotient |= 1;
  const double magnitude = std::ldexp(static_cast<double>(quotient.get_ui()), static_cast<int>(-shift));
  return sgn(q) < 0 ? -magnitude : magnitude;
}

/// Parses "123", "-4/6", "0.7" or ".25" into an exact value. Returns false on
/// malformed input.
inline bool parse_rational(std::string_view text, Rational& out) {
  if (text.empty()) return false;
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    ++pos;
  }
  std::string digits;
  std::size_t fraction_digits = 0;
  bool seen_point = false;
  std::size_t slash = std::string_view::npos;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == '/' && !seen_point) {
      slash = pos;
      break;
    } else {
      return false;
    }
  }
  if (digits.empty()) return false;
  Integer numerator(digits, 10);
  Integer denominator = 1;
  if (slash != std::string_view::npos) {
    const std::string_view rest = text.substr(slash + 1);
    if (rest.empty()) return false;
    for (char c : rest)
      if (c < '0' || c > '9') return false;
    denominator = Integer(std::string(rest), 10);
    if (denominator == 0) return false;
  } else {
    mpz_ui_pow_ui(denominator.get_mpz_t(), 10, fraction_digits);
  }
  out = Rational(negative ? Integer(-numerator) : numerator, denominator);
  out.canonicalize();
  return true;
}

/// "p/q" or "p"; parse_rational reads it back unchanged.
inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace ltiproc
