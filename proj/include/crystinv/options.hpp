#pragma once

#include <cstdint>

namespace crystinv {

struct Tolerances {
  double rank = 1e-12;    // relative eigenvalue cutoff for ranks and pseudoinverses
  double tie = 1e-9;      // relative gap below which eigenvalues count as tied
  double verify = 1e-9;   // identity checks
};

/// splitmix64 step; derives independent per-orbit and per-trial streams from one root seed.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) noexcept {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace crystinv
