#pragma once

// Brute-force reference computations in the ambient |R|-dimensional space.
// Nothing here goes through fiberization, the DFT or the main eigensolver:
// orbits are enumerated by direct index arithmetic, subspaces are built by
// Gram-Schmidt, and eigenvalues come from closed forms or power iteration.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace crystinv::oracle {

using cx = std::complex<double>;
using Vec = std::vector<cx>;

constexpr std::size_t kOrbitCap = 4096;

/// Problem geometry as raw integers: lattice generator columns and row-major point-group matrices.
struct Instance {
  int modulus = 0;
  int dimension = 0;
  std::vector<std::vector<int>> lattice_columns;
  std::vector<std::vector<int>> group_matrices;
};

/// All T_k R_g psi for k in Lambda, g in G, psi in generators, in that nesting
/// order (generator outermost). Throws OracleCapExceeded above kOrbitCap vectors.
std::vector<Vec> orbit(const Instance& inst, const std::vector<Vec>& generators);

/// Orthonormal basis of span(vectors) by modified Gram-Schmidt with one
/// reorthogonalization pass. Vectors whose remainder falls below rel_tol times
/// the largest input norm are dropped.
std::vector<Vec> gram_schmidt(const std::vector<Vec>& vectors, double rel_tol = 1e-9);

struct FrameReport {
  double operator_norm_gap = 0.0;  // ||S - P_W||_2
  double frobenius_gap = 0.0;      // ||S - P_W||_F
  double worst_vector_gap = 0.0;   // max_x ||(S - P_W) e_x||
  double lower_bound = 0.0;        // frame bounds of the orbit on W
  double upper_bound = 0.0;
  std::size_t subspace_dim = 0;
};

/// S = sum over the orbit of psi of eta eta^*, against the projection onto the
/// Gamma-invariant span of `spanning`.
FrameReport frame_operator(const Instance& inst, const std::vector<Vec>& psi, const std::vector<Vec>& spanning);

/// sum_i ||f_i - P_V f_i||^2 with V the span of the orbit of `spanning`.
double brute_projection_error(const Instance& inst, const std::vector<Vec>& data, const std::vector<Vec>& spanning);

/// Eigenvalues of a Hermitian matrix given row-major, non-increasing. Closed form
/// up to size 3; shifted power iteration with deflation and Rayleigh quotient
/// refinement above. Throws ConvergenceFailure.
std::vector<double> eig_reference(const std::vector<Vec>& rows);

/// Largest decrease of the residual sum_a ||a - P a||^2 found by replacing a
/// random unit x in J by cos(t) x + sin(t) y, y a random unit in J^perp,
/// t uniform in (0, max_angle]. Zero when J or J^perp is trivial.
double perturbation_probe(const std::vector<Vec>& columns, const std::vector<Vec>& basis, int trials,
                          std::uint64_t seed, double max_angle = 1.5707963267948966);

}  // namespace crystinv::oracle
