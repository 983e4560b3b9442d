#pragma once

// Fiber subspaces at section points with a nontrivial stabilizer H. There the
// fiber carries the representation h -> rho(h, omega_0) of H, an admissible
// range-function value must be H-invariant, and its multiplicity of each
// irreducible chi is bounded by q * deg(chi), q = kappa |G| / |H|, because
// it is the image of kappa |G| / |H| copies of the regular representation.

#include <cstddef>
#include <random>
#include <vector>

#include "crystinv/group.hpp"
#include "crystinv/linalg.hpp"

namespace crystinv {

struct StabilizerRep {
  std::vector<std::size_t> elements;  // group indices, identity first
  std::vector<CMatrix> matrices;      // rho(h, omega_0)

  std::size_t order() const noexcept { return elements.size(); }
};

StabilizerRep stabilizer_rep(const CrystalModel& model, const OrbitRecord& orbit);

struct IrreduciblePiece {
  CMatrix basis;                 // orthonormal columns, invariant and irreducible
  std::vector<cplx> character;   // trace of rho(h) on the piece
  double weight = 0.0;           // eigenvalue it was drawn from
};

/// Splits an invariant subspace into irreducible pieces with a random element of
/// the commutant. Retries with fresh draws when a piece fails the irreducibility
/// test; throws ConvergenceFailure if every attempt fails.
std::vector<IrreduciblePiece> split_irreducibles(const CMatrix& basis, const StabilizerRep& rep,
                                                 std::mt19937_64& rng, double weight = 0.0);

/// Character classes as (representative piece index, member indices), in order of first appearance.
std::vector<std::vector<std::size_t>> group_by_character(const std::vector<IrreduciblePiece>& pieces);

/// Whether span(basis) is invariant and embeds in q copies of the regular representation.
bool capacity_feasible(const CMatrix& basis, const StabilizerRep& rep, std::size_t q, std::mt19937_64& rng,
                       double tol = 1e-9);

struct ConstrainedChoice {
  CMatrix basis;
  double captured = 0.0;  // tr(P C)
};

/// Best admissible subspace for the covariance C = A A^*: eigen-multiplets of C
/// split into irreducibles, then per character class the heaviest q * deg pieces
/// above `threshold`. Exact because C commutes with the representation.
ConstrainedChoice constrained_top(const CMatrix& covariance, const StabilizerRep& rep, std::size_t q,
                                  double tie_tol, double threshold, std::mt19937_64& rng);

/// H(omega_0) with H H^* = P_{span(basis)} and rho(h) H = H lambda_h for h in H.
/// Columns are indexed i |G| + g for i < kappa. Needs capacity_feasible(basis).
CMatrix covariant_parseval(const CMatrix& basis, const PointGroup& group, const StabilizerRep& rep, std::size_t kappa,
                           std::mt19937_64& rng, double tol = 1e-10);

}  // namespace crystinv
