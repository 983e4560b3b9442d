#pragma once

// Point group G acting on (Z_N)^d by integer matrices, the semidirect product
// Gamma = Lambda x| G, the induced actions on the dual and on the section, the
// representations r and lambda, and the orbit decomposition of the section.

#include <cstddef>
#include <vector>

#include "crystinv/lca.hpp"
#include "crystinv/linalg.hpp"

namespace crystinv {

struct PointGroupElement {
  std::vector<int> matrix;  // d x d, row-major, entries reduced to [0, N)
  std::size_t index = 0;
};

class PointGroup {
 public:
  std::size_t size() const noexcept { return elements_.size(); }
  const PointGroupElement& element(std::size_t g) const { return elements_.at(g); }
  static constexpr std::size_t identity() noexcept { return 0; }

  std::size_t mul(std::size_t a, std::size_t b) const noexcept { return mul_table_[a * size() + b]; }
  std::size_t inv(std::size_t a) const noexcept { return inv_table_[a]; }

  /// x -> g x
  std::size_t act_space(std::size_t g, std::size_t x) const noexcept { return space_map_[g][x]; }
  /// xi -> g^* xi = g^T xi, so that <g^* xi, x> = <xi, g x>.
  std::size_t act_dual(std::size_t g, std::size_t xi) const noexcept { return dual_map_[g][xi]; }

 private:
  friend PointGroup validate_point_group(const Ambient&, const std::vector<std::vector<int>>&, const Lattice&);

  std::vector<PointGroupElement> elements_;
  std::vector<std::size_t> mul_table_;
  std::vector<std::size_t> inv_table_;
  std::vector<std::vector<std::size_t>> space_map_;
  std::vector<std::vector<std::size_t>> dual_map_;
};

/// Checks invertibility mod N, closure, inverses and g Lambda = Lambda.
/// Matrices are row-major d x d. The identity is moved to index 0; the other
/// elements keep their input order. Error messages name the offending index.
PointGroup validate_point_group(const Ambient& ambient, const std::vector<std::vector<int>>& matrices,
                                const Lattice& lattice);

/// Determinant of a row-major integer matrix, reduced to [0, N).
int determinant_mod(const std::vector<int>& matrix, int dimension, int modulus);

struct GammaElement {
  std::size_t k = 0;  // point index, in Lambda
  std::size_t g = 0;  // point-group index
  friend bool operator==(const GammaElement&, const GammaElement&) = default;
};

/// (k, g) . (k', g') = (k + g k', g g')
GammaElement gamma_compose(const Ambient& ambient, const PointGroup& group, GammaElement a, GammaElement b);

/// Class action g^*[xi] = [g^* xi] on section indices.
std::size_t act_on_section(const CosetSection& section, const PointGroup& group, std::size_t g, std::size_t omega);

/// (r_g a)(s) = a(g^* s) on annihilator positions.
Permutation r_rep(const Annihilator& ann, const PointGroup& group, std::size_t g);

/// Fiber permutation relating section representatives:
///   T[R_g f](omega) = rho(g, omega) T[f](g^* omega)
/// with (rho a)(s) = a(g^* s + t) where g^T rep(omega) = rep(g^* omega) + t.
/// Equals r_rep(g) whenever t = 0.
Permutation section_rotation(const Ambient& ambient, const Annihilator& ann, const CosetSection& section,
                             const PointGroup& group, std::size_t g, std::size_t omega);

/// (lambda_g c)_{j, g'} = c_{j, g^{-1} g'} on n |G| coefficients indexed j |G| + g'.
Permutation lambda_rep(const PointGroup& group, std::size_t g, std::size_t n);

struct OrbitMember {
  std::size_t g = 0;      // a group element with g^* rep = omega
  std::size_t omega = 0;  // section index
};

struct OrbitRecord {
  std::size_t rep = 0;
  std::vector<OrbitMember> members;     // rep first, then first-reached order
  std::vector<std::size_t> stabilizer;  // sorted group indices fixing rep

  bool free() const noexcept { return stabilizer.size() == 1; }
};

/// Exact orbit decomposition of the section; fixed points are kept.
std::vector<OrbitRecord> orbit_partition(const CosetSection& section, const PointGroup& group);

struct OrbitSlot {
  std::size_t orbit = 0;
  std::size_t member = 0;
};

/// Everything the fiberwise machinery needs about one problem instance, with
/// the section action and fiber permutations tabulated once. Immutable.
class CrystalModel {
 public:
  CrystalModel(GroupSpec spec, const std::vector<std::vector<int>>& lattice_columns,
               const std::vector<std::vector<int>>& point_group_matrices);

  const Ambient& ambient() const noexcept { return ambient_; }
  const Lattice& lattice() const noexcept { return lattice_; }
  const Annihilator& annihilator() const noexcept { return ann_; }
  const CosetSection& section() const noexcept { return section_; }
  const PointGroup& group() const noexcept { return group_; }
  const std::vector<OrbitRecord>& orbits() const noexcept { return orbits_; }

  std::size_t fiber_length() const noexcept { return ann_.size(); }
  std::size_t section_size() const noexcept { return section_.size(); }
  std::size_t lattice_size() const noexcept { return lattice_.size(); }
  std::size_t group_size() const noexcept { return group_.size(); }

  OrbitSlot slot(std::size_t omega) const noexcept { return slots_[omega]; }
  std::size_t act(std::size_t g, std::size_t omega) const noexcept { return act_[g * section_size() + omega]; }
  const Permutation& r(std::size_t g) const noexcept { return r_[g]; }
  const Permutation& rho(std::size_t g, std::size_t omega) const noexcept { return rho_[g * section_size() + omega]; }

 private:
  Ambient ambient_;
  Lattice lattice_;
  Annihilator ann_;
  CosetSection section_;
  PointGroup group_;
  std::vector<OrbitRecord> orbits_;
  std::vector<OrbitSlot> slots_;
  std::vector<std::size_t> act_;
  std::vector<Permutation> r_;
  std::vector<Permutation> rho_;
};

}  // namespace crystinv
