#include "crystinv/error.hpp"

namespace crystinv {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::LatticeNotPreserved: return "LatticeNotPreserved";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::RankCollapse: return "RankCollapse";
    case ErrorKind::BadKappa: return "BadKappa";
    case ErrorKind::StateMissing: return "StateMissing";
    case ErrorKind::NotParseval: return "NotParseval";
    case ErrorKind::InconsistentSpec: return "InconsistentSpec";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::OracleCapExceeded: return "OracleCapExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace crystinv
