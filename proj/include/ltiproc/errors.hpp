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

#include <stdexcept>
#include <string>

namespace ltiproc {

/// Broad failure classes. The CLI maps each one onto a fixed exit code.
enum class ErrorCategory { usage, parse, domain, numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCategory::domain, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorCategory::numeric, what) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorCategory::parse, std::to_string(line) + ":" +
                                        std::to_string(column) + ": " +
                                        message),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  /// The message without the "line:column: " prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

#define LTIPROC_DEFINE_ERROR(Name, Base)                          \
  class Name : public Base {                                      \
   public:                                                        \
    explicit Name(const std::string& what) : Base(#Name ": " + what) {} \
  };

// Algebra.
LTIPROC_DEFINE_ERROR(DimensionMismatch, DomainError)
LTIPROC_DEFINE_ERROR(NotSquare, DomainError)
LTIPROC_DEFINE_ERROR(NotUnimodular, DomainError)

// Behaviors and processes.
LTIPROC_DEFINE_ERROR(ZeroMatrix, DomainError)
LTIPROC_DEFINE_ERROR(WindowTooShort, DomainError)
LTIPROC_DEFINE_ERROR(ShapeMismatch, DomainError)
LTIPROC_DEFINE_ERROR(SignalDimensionMismatch, DomainError)
LTIPROC_DEFINE_ERROR(NotComplementary, DomainError)

// Spectral densities and simulation.
LTIPROC_DEFINE_ERROR(UnstableKernel, DomainError)
LTIPROC_DEFINE_ERROR(CircleRoot, DomainError)
LTIPROC_DEFINE_ERROR(UnstableFactor, DomainError)
LTIPROC_DEFINE_ERROR(NotParahermitian, DomainError)
LTIPROC_DEFINE_ERROR(NotCoercive, DomainError)
LTIPROC_DEFINE_ERROR(NotScalar, DomainError)
LTIPROC_DEFINE_ERROR(SegmentTooLong, DomainError)
LTIPROC_DEFINE_ERROR(GridMismatch, DomainError)
LTIPROC_DEFINE_ERROR(InvalidArgument, DomainError)
LTIPROC_DEFINE_ERROR(RootOnCircle, NumericError)
LTIPROC_DEFINE_ERROR(SingularFactor, NumericError)
LTIPROC_DEFINE_ERROR(EvaluationSingular, NumericError)
LTIPROC_DEFINE_ERROR(LeadingCoefficientSingular, NumericError)

#undef LTIPROC_DEFINE_ERROR

/// Thrown by kernel_new when the matrix does not have full row normal rank.
class RankDeficient : public DomainError {
 public:
  RankDeficient(int actual_rank, int rows)
      : DomainError("RankDeficient: normal rank " + std::to_string(actual_rank) +
                    " < " + std::to_string(rows) + " rows"),
        actual_rank_(actual_rank) {}

  int actual_rank() const noexcept { return actual_rank_; }

 private:
  int actual_rank_;
};

}  // namespace ltiproc
