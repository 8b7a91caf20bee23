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

// Text format for Laurent polynomial matrices:
//
//   matrix := '[' row (';' row)* ']'
//   row    := entry (',' entry)*
//   entry  := ['+'|'-'] term (('+'|'-') term)*
//   term   := coeff | coeff '*'? zpow | zpow
//   zpow   := 'z' ('^' signed_int)?
//   coeff  := decimal | int ('/' int)?
//
// Whitespace is insignificant and '#' starts a comment that runs to the end
// of the line. Decimals are read as exact rationals.

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ltiproc/errors.hpp"
#include "ltiproc/laurent_matrix.hpp"

namespace ltiproc {

namespace detail {

class MatrixParser {
 public:
  explicit MatrixParser(std::string_view text) : text_(text) {}

  LaurentMatrix parse() {
    expect('[', "'['");
    std::vector<std::vector<LaurentPolynomial>> rows;
    rows.push_back(parse_row());
    while (peek() == ';') {
      advance();
      rows.push_back(parse_row());
    }
    expect(']', "',', ';' or ']'");
    if (peek() != '\0') fail("end of input");
    const std::size_t cols = rows.front().size();
    LaurentMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) {
        throw ParseError(row_lines_[i].first, row_lines_[i].second,
                         "row " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " +
                             std::to_string(cols));
      }
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

 private:
  std::vector<LaurentPolynomial> parse_row() {
    skip_space();
    row_lines_.emplace_back(line_, column_);
    std::vector<LaurentPolynomial> row;
    row.push_back(parse_entry());
    while (peek() == ',') {
      advance();
      row.push_back(parse_entry());
    }
    return row;
  }

  LaurentPolynomial parse_entry() {
    LaurentPolynomial sum;
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      advance();
    }
    for (;;) {
      LaurentPolynomial term = parse_term();
      sum += negative ? -term : term;
      const char c = peek();
      if (c != '+' && c != '-') break;
      negative = c == '-';
      advance();
    }
    return sum;
  }

  LaurentPolynomial parse_term() {
    Rational coefficient = 1;
    const char c = peek();
    if (c == 'z') return LaurentPolynomial::monomial(1, parse_zpow());
    if (!is_number_start(c)) fail("a coefficient or 'z'");
    coefficient = parse_coeff();
    bool star = false;
    if (peek() == '*') {
      advance();
      star = true;
    }
    if (peek() == 'z') return LaurentPolynomial::monomial(coefficient, parse_zpow());
    if (star) fail("'z' after '*'");
    return LaurentPolynomial(coefficient);
  }

  int parse_zpow() {
    advance();  // 'z'
    if (peek() != '^') return 1;
    advance();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      advance();
    }
    if (!is_digit(peek())) fail("an integer exponent");
    const int line = line_;
    const int column = column_;
    const std::string digits = read_digits();
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc())
      throw ParseError(line, column, "expected an exponent that fits in an int, found '" + digits + "'");
    return negative ? -value : value;
  }

  Rational parse_coeff() {
    std::string literal = read_digits();
    bool decimal = false;
    if (current() == '.') {
      decimal = true;
      literal.push_back('.');
      bump();
      if (!is_digit(current())) fail("digits after '.'");
      literal += read_digits_raw();
    }
    if (!decimal && peek() == '/') {
      advance();
      if (!is_digit(peek())) fail("an integer denominator");
      const int line = line_;
      const int column = column_;
      const std::string denominator = read_digits();
      if (denominator.find_first_not_of('0') == std::string::npos)
        throw ParseError(line, column, "expected a nonzero denominator, found '" + denominator + "'");
      literal += "/" + denominator;
    }
    Rational value;
    if (!parse_rational(literal, value)) fail("a number");
    return value;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_number_start(char c) { return is_digit(c) || c == '.'; }

  std::string read_digits() {
    skip_space();
    return read_digits_raw();
  }

  std::string read_digits_raw() {
    std::string out;
    while (is_digit(current())) {
      out.push_back(current());
      bump();
    }
    return out;
  }

  char current() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        bump();
      } else {
        break;
      }
    }
  }

  char peek() {
    skip_space();
    return current();
  }

  void advance() {
    skip_space();
    if (pos_ < text_.size()) bump();
  }

  void expect(char c, const char* what) {
    if (peek() != c) fail(what);
    advance();
  }

  [[noreturn]] void fail(const std::string& expected) {
    skip_space();
    const std::string found =
        pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(line_, column_, "expected " + expected + ", found " + found);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  std::vector<std::pair<int, int>> row_lines_;
};

inline std::string format_decimal(double value) {
  // Shortest fixed notation that reads back as the same double; the grammar
  // has no exponent syntax.
  char buffer[512];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::fixed);
  return std::string(buffer, end);
}

}  // namespace detail

enum class CoefficientStyle {
  exact,    ///< p/q, reparses to the identical value
  decimal,  ///< 17 significant digits, for floating-point derived values
};

inline LaurentMatrix parse_matrix(std::string_view text) {
  return detail::MatrixParser(text).parse();
}

inline std::string format_polynomial(const LaurentPolynomial& p,
                                     CoefficientStyle style = CoefficientStyle::exact) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int e = p.high_exponent(); e >= p.low_exponent(); --e) {
    const Rational c = p.coefficient(e);
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational magnitude = abs(c);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    const std::string number = style == CoefficientStyle::exact
                                   ? magnitude.get_str()
                                   : detail::format_decimal(to_double(magnitude));
    if (e == 0) {
      out += number;
      continue;
    }
    if (magnitude != 1) out += number + "*";
    out += "z";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

/// One row per line, e.g. "[ z - 1/2, 1 ;\n  0, z ]".
inline std::string format_matrix(const LaurentMatrix& m,
                                 CoefficientStyle style = CoefficientStyle::exact) {
  std::string out = "[ ";
  for (int i = 0; i < m.rows(); ++i) {
    if (i > 0) out += " ;\n  ";
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ", ";
      out += format_polynomial(m(i, j), style);
    }
  }
  out += " ]";
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPolynomial& p) {
  return os << format_polynomial(p);
}

inline std::ostream& operator<<(std::ostream& os, const LaurentMatrix& m) {
  return os << format_matrix(m);
}

struct MatrixDocument {
  std::string source;
  LaurentMatrix matrix;
};

inline MatrixDocument read_matrix_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::usage, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string source = buffer.str();
  LaurentMatrix m = parse_matrix(source);
  return {std::move(source), std::move(m)};
}

}  // namespace ltiproc
