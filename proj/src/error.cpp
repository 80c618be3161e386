#include "ddiag/error.hpp"

namespace ddiag {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotNonnegativeDefinite: return "NotNonnegativeDefinite";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::RankExceeded: return "RankExceeded";
    case ErrorCode::ZeroVarianceColumn: return "ZeroVarianceColumn";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::DegenerateTable: return "DegenerateTable";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::NonIntegerCount: return "NonIntegerCount";
    case ErrorCode::SingularSxx: return "SingularSxx";
    case ErrorCode::EigengapViolation: return "EigengapViolation";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::PerronAmbiguity: return "PerronAmbiguity";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) noexcept {
  return 10 + static_cast<int>(code);
}

}  // namespace ddiag
