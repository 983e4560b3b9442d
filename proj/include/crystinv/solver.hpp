#pragma once

// Optimal Gamma-invariant subspace of length at most kappa for a finite data
// set: per-orbit spectra, Parseval generators, achieved error and the
// stabilizer-weighted spectral bound, plus the coefficient formula.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "crystinv/fiber.hpp"
#include "crystinv/options.hpp"
#include "crystinv/range.hpp"
#include "crystinv/spectra.hpp"

namespace crystinv {

struct SolveOptions {
  Tolerances tol;
  std::uint64_t seed = 42;
  Exec exec;
};

/// How the fiber subspace at an orbit representative was chosen.
enum class Route {
  EckartYoung,  // top kappa |G| eigenvectors of the Gramian
  Symmetrized,  // tied cut resolved by Reynolds averaging
  Constrained,  // per-character capacity bound enforced
};

const char* to_string(Route route) noexcept;

struct OrbitDiagnostics {
  bool tie = false;                   // the cut splits an eigenvalue multiplet
  bool symmetrized = false;           // Reynolds averaging was applied
  bool capacity_constrained = false;  // the unconstrained optimum is not admissible
  bool any() const noexcept { return symmetrized || capacity_constrained; }
};

struct OrbitReport {
  std::size_t rep = 0;
  std::vector<std::size_t> members;  // section indices, representative first
  std::size_t stabilizer_order = 1;
  std::vector<double> sigma2;        // Gramian spectrum, position i |G| + g
  std::vector<Label> labels;
  std::size_t rank = 0;              // dim J_W(omega_0)
  double bound_residual = 0.0;       // trailing eigenvalue sum at omega_0
  double achieved_residual = 0.0;    // D(W; F)(omega_0)
  Route route = Route::EckartYoung;
  OrbitDiagnostics diagnostics;
};

struct SolveReport {
  std::size_t m = 0;
  std::size_t kappa = 0;
  std::vector<OrbitReport> orbits;
  double achieved_error = 0.0;
  double spectral_bound = 0.0;

  bool any_diagnostic() const noexcept;
};

struct GeneratorSet {
  std::vector<Signal> signals;
};

/// Per-orbit data kept for the coefficient formula.
struct SolveState {
  bool ready = false;
  std::size_t m = 0;
  std::size_t kappa = 0;
  double eps_rank = 0.0;
  double floor = 0.0;  // global data scale behind every rank decision
  std::vector<CMatrix> eigvecs;              // V(omega_0), per orbit
  std::vector<std::vector<double>> theta;    // 1/sigma above threshold, else 0, per orbit
  std::vector<CMatrix> generator_fibers;     // H(omega), per section point, columns i |G| + g
};

struct SolveResult {
  GeneratorSet generators;
  SolveReport report;
  SolveState state;
};

/// Throws BadKappa unless 1 <= kappa <= m, EmptyFamily for no data.
SolveResult solve_optimal(const CrystalModel& model, std::span<const Signal> data, std::size_t kappa,
                          const SolveOptions& options = {});

/// C_i(omega) with T[psi_i](omega) = sum_{j,g'} C_i^{j,g'}(omega) T[R_{g'} f_j](omega).
/// At free orbits this is theta_{i,g} V^{i,g}(omega), V(omega) = lambda_{g^{-1}} V(omega_0);
/// at fixed orbits it is the minimal-norm solution. Throws StateMissing.
CVector generator_coefficients(const CrystalModel& model, std::span<const Signal> data, const SolveState& state,
                               std::size_t i, std::size_t omega);

/// Range function of the solution, read off the generator fibers.
RangeFunctionTable solution_range(const CrystalModel& model, const SolveState& state, double eps_rank = 1e-12);

}  // namespace crystinv
