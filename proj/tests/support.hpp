#pragma once

#include <random>
#include <span>
#include <vector>

#include "crystinv/fiber.hpp"
#include "crystinv/group.hpp"
#include "crystinv/oracle.hpp"

namespace crystinv::testing {

/// Raw geometry, so the same instance can be handed to the model and to the oracle.
struct Setup {
  GroupSpec spec;
  std::vector<std::vector<int>> lattice;
  std::vector<std::vector<int>> group;

  CrystalModel model() const { return CrystalModel(spec, lattice, group); }
  oracle::Instance raw() const { return {spec.modulus, spec.dimension, lattice, group}; }
};

/// Z_12, Lambda = 3Z_12, G = {+1, -1}.
inline Setup setup_z12_pm() { return {{12, 1}, {{3}}, {{1}, {-1}}}; }

/// Z_8^2, Lambda = 2Z_8^2, G = C4 generated by [[0,-1],[1,0]].
inline Setup setup_z8sq_c4() {
  return {{8, 2}, {{2, 0}, {0, 2}}, {{1, 0, 0, 1}, {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0}}};
}

/// Z_8^2, Lambda = 4Z_8^2, G = D4. Fibers of length 4 carry non-abelian stabilizers.
inline Setup setup_z8sq_d4() {
  return {{8, 2},
          {{4, 0}, {0, 4}},
          {{1, 0, 0, 1}, {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0},
           {1, 0, 0, -1}, {-1, 0, 0, 1}, {0, 1, 1, 0}, {0, -1, -1, 0}}};
}

/// Z_24, Lambda = 6Z_24, G = {+1, -1}: fibers of length 4, so rank-deficient subspaces are proper.
inline Setup setup_z24_pm() { return {{24, 1}, {{6}}, {{1}, {-1}}}; }

/// Z_12 with Lambda = 3Z_12 and trivial point group.
inline Setup setup_z12_trivial() { return {{12, 1}, {{3}}, {{1}}}; }

inline CrystalModel z12_pm() { return setup_z12_pm().model(); }
inline CrystalModel z8sq_c4() { return setup_z8sq_c4().model(); }
inline CrystalModel z8sq_d4() { return setup_z8sq_d4().model(); }
inline CrystalModel z24_pm() { return setup_z24_pm().model(); }
inline CrystalModel z12_trivial() { return setup_z12_trivial().model(); }

inline std::vector<oracle::Vec> raw(std::span<const Signal> family) {
  std::vector<oracle::Vec> out;
  for (const auto& s : family) out.push_back(s.values);
  return out;
}

inline Signal random_signal(std::size_t size, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Signal s{CVector(size)};
  for (auto& x : s.values) x = cplx(normal(rng), normal(rng));
  return s;
}

inline std::vector<Signal> random_family(std::size_t size, std::size_t n, std::mt19937_64& rng) {
  std::vector<Signal> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_signal(size, rng));
  return out;
}

inline Signal delta(std::size_t size, std::size_t at, cplx value = 1.0) {
  Signal s{CVector(size)};
  s.values[at] = value;
  return s;
}

inline double signal_norm(const Signal& s) { return norm2(s.values); }

inline double signal_distance(const Signal& a, const Signal& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) acc += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(acc);
}

}  // namespace crystinv::testing
