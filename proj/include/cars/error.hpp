#pragma once

#include <stdexcept>
#include <string>

namespace cars {

enum class ErrorCode {
  kBudgetExhausted = 1,
  kDimensionMismatch,
  kNoQueriesYet,
  kZeroGradient,
  kSingularMatrix,
  kInvalidConstants,
  kNonpositiveCurvature,
  kZeroCurvature,
  kUnknownProblem,
  kUnknownSolver,
  kInvalidTargets,
  kInvalidConfig,
  kParseError,
  kIo,
};

const char* to_string(ErrorCode code) noexcept;

// All recoverable failures in the library are reported as cars::Error. The C
// API maps the code one-to-one onto cars_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cars
