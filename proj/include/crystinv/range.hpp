#pragma once

// Range functions of shift- and Gamma-invariant spaces, their covariance
// checks, the Parseval generator construction, orthogonal decomposition into
// single-generator pieces, and the residual/error functionals.

#include <cstddef>
#include <span>
#include <vector>

#include "crystinv/fiber.hpp"
#include "crystinv/options.hpp"

namespace crystinv {

/// One orthonormal basis per section point.
struct RangeFunctionTable {
  std::vector<CMatrix> bases;  // |Lambda^perp| x dim(omega)

  std::size_t dim(std::size_t omega) const noexcept { return bases[omega].cols(); }
  std::size_t total_dim() const noexcept;
  CMatrix projector(std::size_t omega) const;
};

/// Span of the columns of `columns`, with eigenvalues of columns columns^* kept
/// above eps_rank * max(lambda_max, floor).
CMatrix orthonormal_span(const CMatrix& columns, double eps_rank, double floor = 0.0);

/// J(omega) = span{T[phi](omega) : phi in family}. Pass the rotated family to
/// get the range function of the Gamma-invariant span.
RangeFunctionTable range_function(const CrystalModel& model, std::span<const Signal> family, double eps_rank,
                                  Exec exec = {});

/// Range function of S_Gamma(family): spans of the pre-Gramian columns. floor <
/// 0 uses the family's own largest fiber energy.
RangeFunctionTable invariant_range_function(const CrystalModel& model, std::span<const FourierCoeffs> hats,
                                            double eps_rank, double floor = -1.0, Exec exec = {});
RangeFunctionTable invariant_range_function(const CrystalModel& model, std::span<const Signal> family,
                                            double eps_rank, double floor = -1.0, Exec exec = {});

/// Largest eigenvalue of the rotated-family fiber energy over all section points.
double global_fiber_scale(const CrystalModel& model, std::span<const FourierCoeffs> hats);

struct CovarianceReport {
  double worst = 0.0;
  std::size_t g = 0;
  std::size_t omega = 0;
  bool passed = true;
};

/// max over (g, omega) of || P_{J(g^* omega)} - rho(g,omega)^{-1} P_{J(omega)} rho(g,omega) ||_F.
CovarianceReport check_gamma_covariance(const CrystalModel& model, const RangeFunctionTable& table,
                                        double tol = 1e-9);

/// K(omega_0, g) for every orbit representative and group element, at true frequencies.
struct GammaRangeTable {
  std::vector<std::vector<CMatrix>> bases;  // [orbit][g]
};

GammaRangeTable gamma_range_function(const CrystalModel& model, std::span<const Signal> family, double eps_rank);

/// max over (omega_0, g, u) of || r_{u^{-1}} P_{K(omega_0,g)} r_u - P_{K(omega_0,g u)} ||_F.
CovarianceReport check_gamma_table(const CrystalModel& model, const GammaRangeTable& table, double tol = 1e-9);

/// Q(omega) = J(omega) (G(omega)^+)^{1/2}; psi_i is the defiberized column (i, e).
/// The orbit of the result is a Parseval frame for S_Gamma(family).
std::vector<Signal> parsevalize(const CrystalModel& model, std::span<const Signal> family, double eps_rank,
                                double floor = -1.0, Exec exec = {});

/// Single generators with mutually orthogonal Gamma-invariant spans whose sum is
/// S_Gamma(family). Components that project to zero are dropped.
std::vector<Signal> orthogonal_decompose(const CrystalModel& model, std::span<const Signal> family,
                                         double eps_rank, Exec exec = {});

/// max over omega of || P_A(omega) P_B(omega) ||_F.
double orthogonality_residual(const RangeFunctionTable& a, const RangeFunctionTable& b);

/// sum of squared distances of the columns from span(basis).
double fiber_residual(const CMatrix& basis, const CMatrix& columns);

/// (1/|Lambda|) sum_omega sum_i ||(I - P_J(omega)) T[f_i](omega)||^2.
double error_functional(const CrystalModel& model, const RangeFunctionTable& table, std::span<const Signal> data);

/// (1/|Lambda|) sum_{omega_0} D(omega_0) / |Stab(omega_0)|, with D summed over the rotated data.
/// Agrees with error_functional when the table is Gamma-covariant.
double error_functional_orbits(const CrystalModel& model, const RangeFunctionTable& table,
                               std::span<const Signal> data);

/// Fiberwise frame operator Q(omega) Q(omega)^* of the orbit of a generator set.
std::vector<CMatrix> frame_operator_field(const CrystalModel& model, std::span<const Signal> generators);

/// Projection onto S_Gamma(generators) through the frame expansion. Throws
/// NotParseval when some fiber frame operator is not a projection to 1e-8.
Signal project(const CrystalModel& model, const Signal& f, std::span<const Signal> generators);

}  // namespace crystinv
