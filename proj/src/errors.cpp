#include "furstenberg/errors.hpp"

namespace furstenberg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PivotBreakdown: return "PivotBreakdown";
    case ErrorKind::NumericallySingular: return "NumericallySingular";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotOpposite: return "NotOpposite";
    case ErrorKind::NotGeneric: return "NotGeneric";
    case ErrorKind::WrongGroupType: return "WrongGroupType";
    case ErrorKind::FormulaDomain: return "FormulaDomain";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateBoundary: return "DegenerateBoundary";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::GenerationExhausted: return "GenerationExhausted";
  }
  return "Unknown";
}

bool Error::is_domain_error() const noexcept {
  switch (kind_) {
    case ErrorKind::PivotBreakdown:
    case ErrorKind::NotOpposite:
    case ErrorKind::NotGeneric:
    case ErrorKind::WrongGroupType:
    case ErrorKind::FormulaDomain:
    case ErrorKind::DegenerateBoundary:
    case ErrorKind::DegeneratePair:
    case ErrorKind::NotPositiveDefinite:
    case ErrorKind::NumericallySingular:
      return true;
    default:
      return false;
  }
}

}  // namespace furstenberg
