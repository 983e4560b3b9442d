#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crystinv {

enum class ErrorKind {
  DimensionMismatch,
  NotAGroup,
  LatticeNotPreserved,
  NotInvertible,
  EmptyFamily,
  NotHermitian,
  NotPsd,
  SizeMismatch,
  RankCollapse,
  BadKappa,
  StateMissing,
  NotParseval,
  InconsistentSpec,
  ConvergenceFailure,
  OracleCapExceeded,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (notably the
/// CLI exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace crystinv
