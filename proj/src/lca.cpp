#include "crystinv/lca.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "crystinv/error.hpp"

namespace crystinv {

namespace {

constexpr std::size_t kMaxAmbientSize = std::size_t{1} << 26;

int mod(long long v, int n) {
  long long r = v % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

Ambient::Ambient(GroupSpec spec) : spec_(spec) {
  if (spec.modulus < 2) throw Error(ErrorKind::ValidationError, "modulus N must be >= 2");
  if (spec.dimension < 1) throw Error(ErrorKind::ValidationError, "dimension d must be >= 1");
  const auto d = static_cast<std::size_t>(spec.dimension);
  std::size_t size = 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (size > kMaxAmbientSize / static_cast<std::size_t>(spec.modulus))
      throw Error(ErrorKind::ValidationError, "N^d exceeds the supported ambient size");
    size *= static_cast<std::size_t>(spec.modulus);
  }
  size_ = size;

  strides_.assign(d, 1);
  for (std::size_t j = d - 1; j-- > 0;) strides_[j] = strides_[j + 1] * static_cast<std::size_t>(spec.modulus);

  coord_table_.resize(size_ * d);
  for (std::size_t idx = 0; idx < size_; ++idx) {
    std::size_t rest = idx;
    for (std::size_t j = 0; j < d; ++j) {
      coord_table_[idx * d + j] = static_cast<int>(rest / strides_[j]);
      rest %= strides_[j];
    }
  }

  roots_.resize(static_cast<std::size_t>(spec.modulus));
  for (int k = 0; k < spec.modulus; ++k) {
    // Exact values at quarter turns keep pairing identities free of roundoff there.
    const int n = spec.modulus;
    if (k == 0) roots_[0] = 1.0;
    else if (4 * k == n) roots_[k] = cplx(0.0, 1.0);
    else if (2 * k == n) roots_[k] = -1.0;
    else if (4 * k == 3 * n) roots_[k] = cplx(0.0, -1.0);
    else roots_[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
  }
}

std::size_t Ambient::index(std::span<const int> coords) const {
  if (coords.size() != static_cast<std::size_t>(spec_.dimension))
    throw Error(ErrorKind::DimensionMismatch, "coordinate tuple has length " + std::to_string(coords.size()) +
                                                  ", expected " + std::to_string(spec_.dimension));
  std::size_t idx = 0;
  for (std::size_t j = 0; j < coords.size(); ++j)
    idx += static_cast<std::size_t>(mod(coords[j], spec_.modulus)) * strides_[j];
  return idx;
}

std::size_t Ambient::add(std::size_t a, std::size_t b) const noexcept {
  auto ca = coords(a);
  auto cb = coords(b);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < ca.size(); ++j) {
    int s = ca[j] + cb[j];
    if (s >= spec_.modulus) s -= spec_.modulus;
    idx += static_cast<std::size_t>(s) * strides_[j];
  }
  return idx;
}

std::size_t Ambient::sub(std::size_t a, std::size_t b) const noexcept {
  auto ca = coords(a);
  auto cb = coords(b);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < ca.size(); ++j) {
    int s = ca[j] - cb[j];
    if (s < 0) s += spec_.modulus;
    idx += static_cast<std::size_t>(s) * strides_[j];
  }
  return idx;
}

std::size_t Ambient::neg(std::size_t a) const noexcept { return sub(0, a); }

int Ambient::dot_mod(std::size_t a, std::size_t b) const noexcept {
  auto ca = coords(a);
  auto cb = coords(b);
  long long s = 0;
  for (std::size_t j = 0; j < ca.size(); ++j) s += static_cast<long long>(ca[j]) * cb[j];
  return static_cast<int>(s % spec_.modulus);
}

cplx pairing(const Ambient& ambient, const Freq& xi, const Point& x) {
  const auto d = static_cast<std::size_t>(ambient.dimension());
  if (xi.c.size() != d || x.c.size() != d)
    throw Error(ErrorKind::DimensionMismatch, "pairing arguments do not match the group dimension");
  long long s = 0;
  for (std::size_t j = 0; j < d; ++j)
    s += static_cast<long long>(mod(xi.c[j], ambient.modulus())) * mod(x.c[j], ambient.modulus());
  return ambient.root(static_cast<int>(s % ambient.modulus()));
}

Lattice enumerate_lattice(const Ambient& ambient, const std::vector<std::vector<int>>& generator_columns) {
  Lattice lat;
  lat.generators = generator_columns;
  std::vector<std::size_t> gens;
  for (const auto& col : generator_columns) gens.push_back(ambient.index(col));

  lat.member.assign(ambient.size(), 0);
  std::queue<std::size_t> frontier;
  lat.member[0] = 1;
  frontier.push(0);
  while (!frontier.empty()) {
    const std::size_t x = frontier.front();
    frontier.pop();
    for (std::size_t g : gens) {
      const std::size_t y = ambient.add(x, g);
      if (!lat.member[y]) {
        lat.member[y] = 1;
        frontier.push(y);
      }
    }
  }
  for (std::size_t idx = 0; idx < ambient.size(); ++idx)
    if (lat.member[idx]) lat.elements.push_back(idx);
  return lat;
}

Annihilator annihilator(const Ambient& ambient, const Lattice& lattice) {
  std::vector<std::size_t> gens;
  for (const auto& col : lattice.generators) gens.push_back(ambient.index(col));

  Annihilator ann;
  ann.position.assign(ambient.size(), -1);
  for (std::size_t xi = 0; xi < ambient.size(); ++xi) {
    bool in = true;
    for (std::size_t k : gens) {
      if (ambient.dot_mod(xi, k) != 0) {
        in = false;
        break;
      }
    }
    if (in) {
      ann.position[xi] = static_cast<long>(ann.elements.size());
      ann.elements.push_back(xi);
    }
  }
  if (ann.size() * lattice.size() != ambient.size())
    throw Error(ErrorKind::InconsistentSpec, "|annihilator| * |lattice| != N^d");
  return ann;
}

CosetSection coset_section(const Ambient& ambient, const Annihilator& ann) {
  CosetSection sec;
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  sec.table.assign(ambient.size(), Reduced{unset, unset});
  for (std::size_t xi = 0; xi < ambient.size(); ++xi) {
    if (sec.table[xi].rep != unset) continue;
    const std::size_t rep_idx = sec.reps.size();
    sec.reps.push_back(xi);
    for (std::size_t p = 0; p < ann.size(); ++p) {
      const std::size_t member = ambient.add(xi, ann.elements[p]);
      sec.table[member] = Reduced{rep_idx, p};
    }
  }
  return sec;
}

}  // namespace crystinv
