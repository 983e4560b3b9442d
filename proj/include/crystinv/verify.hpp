#pragma once

// Identity suite run by `verify`: isometry, intertwining, the covariance
// family, the Gamma table, Parseval generators and the two error routes, each
// measured on the caller's data and compared against a relative tolerance.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crystinv/fiber.hpp"
#include "crystinv/options.hpp"

namespace crystinv {

/// Deliberate corruption of one identity's computed side, for exercising the
/// failure path end to end.
enum class Fault { None, Isometry, Intertwining, Covariance, Parseval };

std::optional<Fault> parse_fault(std::string_view name);
const char* to_string(Fault fault) noexcept;

struct IdentityCheck {
  std::string name;
  double worst = 0.0;  // relative violation
  double tol = 0.0;
  std::string where;   // location of the worst violation

  bool passed() const noexcept { return worst <= tol; }
};

struct VerifyReport {
  std::vector<IdentityCheck> checks;

  bool passed() const noexcept;
  /// Check with the largest worst / tol ratio.
  const IdentityCheck& worst_offender() const;
};

VerifyReport verify_identities(const CrystalModel& model, std::span<const Signal> data, const Tolerances& tol,
                               Fault fault = Fault::None, Exec exec = {});

}  // namespace crystinv
