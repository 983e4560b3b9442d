#pragma once

// Unitary DFT on (Z_N)^d, translations and rotations of signals, the
// fiberization isometry and its Gamma-adapted variant, and pre-Gramians.
//
// Normalisation: the DFT is unitary, fibers carry a factor sqrt(|Lambda|) and
// each section point has weight 1/|Lambda|. Under this choice
//   (1/|Lambda|) sum_omega ||T[f](omega)||^2 = ||f||^2
// and a Parseval orbit frame has fiberwise frame operator equal to a projection.

#include <cstddef>
#include <span>
#include <vector>

#include "crystinv/group.hpp"
#include "crystinv/linalg.hpp"

namespace crystinv {

/// Thread budget for the OpenMP kernels. jobs <= 1 runs serially; results are
/// bitwise identical for every value of jobs.
struct Exec {
  int jobs = 1;
};

struct Signal {
  CVector values;  // indexed by point
};

struct FourierCoeffs {
  CVector values;  // indexed by frequency
};

/// f^(xi) = N^{-d/2} sum_x conj(<xi, x>) f(x), one axis at a time.
FourierCoeffs dft(const Ambient& ambient, const Signal& f, Exec exec = {});
Signal idft(const Ambient& ambient, const FourierCoeffs& fhat, Exec exec = {});

namespace reference {
/// Direct O(|R|^2) double sum, serial. Kept as the reference the fast kernels are tested against.
FourierCoeffs dft(const Ambient& ambient, const Signal& f);
Signal idft(const Ambient& ambient, const FourierCoeffs& fhat);
}  // namespace reference

/// (T_k f)(x) = f(x - k)
Signal translate(const Ambient& ambient, std::size_t k, const Signal& f);
/// (R_g f)(x) = f(g^{-1} x)
Signal rotate(const PointGroup& group, std::size_t g, const Signal& f);

using FiberVector = CVector;

/// Fibers of one signal over the section: column omega is T[f](omega).
struct FiberField {
  CMatrix fibers;  // |Lambda^perp| x |Omega|
};

/// T[f](xi) = sqrt(|Lambda|) (f^(xi + s))_{s in Lambda^perp} at any frequency xi,
/// not only at section representatives.
FiberVector fiber_at(const CrystalModel& model, const FourierCoeffs& fhat, std::size_t freq);

FiberField fiberize(const CrystalModel& model, const FourierCoeffs& fhat);
FiberField fiberize(const CrystalModel& model, const Signal& f, Exec exec = {});
Signal defiberize(const CrystalModel& model, const FiberField& field, Exec exec = {});

/// (1/|Lambda|) sum_omega ||F(omega)||^2, the squared norm of the fiber space.
double weighted_norm_squared(const CrystalModel& model, const FiberField& field);

/// T_G[f](omega_0, g) = T[f](g^* rep(omega_0)), evaluated at the true frequency.
/// Entry o has one column per group element.
struct GammaField {
  std::vector<CMatrix> per_orbit;
};

GammaField fiberize_gamma(const CrystalModel& model, const Signal& f);

/// Pi(g) F(omega) = rho(g, omega) F(g^* omega), i.e. T R_g T^{-1} on the section.
FiberField pi_rep(const CrystalModel& model, std::size_t g, const FiberField& field);

/// DFTs of a family, computed once and shared by all fibers.
std::vector<FourierCoeffs> transform_family(const Ambient& ambient, std::span<const Signal> family, Exec exec = {});

/// Pre-Gramian of the rotated family {R_g phi_i}: column i |G| + g is
/// T[R_g phi_i](omega). Throws EmptyFamily.
CMatrix pre_gramian(const CrystalModel& model, std::span<const FourierCoeffs> hats, std::size_t omega);
CMatrix pre_gramian(const CrystalModel& model, std::span<const Signal> family, std::size_t omega);
/// Same columns evaluated at an arbitrary frequency.
CMatrix pre_gramian_at_frequency(const CrystalModel& model, std::span<const FourierCoeffs> hats, std::size_t freq);

/// Pre-Gramian of the family without rotations: column i is T[phi_i](omega).
CMatrix synthesis_at(const CrystalModel& model, std::span<const FourierCoeffs> hats, std::size_t omega);

CMatrix gramian(const CrystalModel& model, std::span<const FourierCoeffs> hats, std::size_t omega);
CMatrix gramian(const CrystalModel& model, std::span<const Signal> family, std::size_t omega);

/// Pre-Gramians at every section point.
std::vector<CMatrix> pre_gramian_field(const CrystalModel& model, std::span<const FourierCoeffs> hats, Exec exec = {});

}  // namespace crystinv
