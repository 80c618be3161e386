#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ddiag {

// Every failure the library can report. The CLI maps each code to its own
// exit status (see exit_code()).
enum class ErrorCode {
  NonSquare,
  NotSymmetric,
  NotPositiveDefinite,
  NotNonnegativeDefinite,
  NonFiniteValue,
  ConvergenceFailure,
  DimensionMismatch,
  RankMismatch,
  RankExceeded,
  ZeroVarianceColumn,
  BadWeights,
  TooFewRows,
  DegenerateTable,
  NegativeCount,
  NonIntegerCount,
  SingularSxx,
  EigengapViolation,
  ZeroOperator,
  PerronAmbiguity,
  ParseError,
  DuplicateId,
  IoError,
  InvalidConfig,
};

std::string_view error_name(ErrorCode code) noexcept;

// Process exit status used by ddtool for a given error. Distinct per code,
// starting at 10 so that 1 and 2 remain free for generic/usage failures.
int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace ddiag
