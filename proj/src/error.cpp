#include "frameforge/error.hpp"

namespace frameforge {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidShape: return "InvalidShape";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::NotParseval: return "NotParseval";
    case ErrorKind::NotProjector: return "NotProjector";
    case ErrorKind::NotEqualNorm: return "NotEqualNorm";
    case ErrorKind::NormBoundViolated: return "NormBoundViolated";
    case ErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorKind::CriterionMismatch: return "CriterionMismatch";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::FeasibleInput: return "FeasibleInput";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::PavingNotFound: return "PavingNotFound";
    case ErrorKind::InternalContractViolation: return "InternalContractViolation";
  }
  return "Unknown";
}

}  // namespace frameforge
