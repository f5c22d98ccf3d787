#include "cars/error.hpp"

namespace cars {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kBudgetExhausted: return "budget exhausted";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kNoQueriesYet: return "no queries yet";
    case ErrorCode::kZeroGradient: return "zero gradient";
    case ErrorCode::kSingularMatrix: return "singular matrix";
    case ErrorCode::kInvalidConstants: return "invalid constants";
    case ErrorCode::kNonpositiveCurvature: return "nonpositive curvature";
    case ErrorCode::kZeroCurvature: return "zero curvature";
    case ErrorCode::kUnknownProblem: return "unknown problem";
    case ErrorCode::kUnknownSolver: return "unknown solver";
    case ErrorCode::kInvalidTargets: return "invalid targets";
    case ErrorCode::kInvalidConfig: return "invalid config";
    case ErrorCode::kParseError: return "parse error";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown error";
}

}  // namespace cars
