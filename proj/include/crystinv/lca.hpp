#pragma once

// Finite ambient group R = (Z_N)^d, its dual, a lattice, the annihilator of
// the lattice and a section of the dual modulo the annihilator.
//
// Points and frequencies are addressed by a linear index whose order is the
// lexicographic order of coordinates (first coordinate most significant), so
// "sorted by index" and "lexicographically sorted" coincide everywhere.

#include <cstddef>
#include <span>
#include <vector>

#include "crystinv/linalg.hpp"

namespace crystinv {

struct GroupSpec {
  int modulus = 0;    // N
  int dimension = 0;  // d
};

struct SpaceTag;
struct DualTag;

template <class Tag>
struct Coords {
  std::vector<int> c;
  friend bool operator==(const Coords&, const Coords&) = default;
};

using Point = Coords<SpaceTag>;
using Freq = Coords<DualTag>;

class Ambient {
 public:
  explicit Ambient(GroupSpec spec);

  const GroupSpec& spec() const noexcept { return spec_; }
  int modulus() const noexcept { return spec_.modulus; }
  int dimension() const noexcept { return spec_.dimension; }
  std::size_t size() const noexcept { return size_; }

  /// Coordinates are reduced mod N, negatives included.
  std::size_t index(std::span<const int> coords) const;
  std::span<const int> coords(std::size_t idx) const noexcept {
    return {coord_table_.data() + idx * static_cast<std::size_t>(spec_.dimension),
            static_cast<std::size_t>(spec_.dimension)};
  }
  std::size_t stride(int axis) const noexcept { return strides_[static_cast<std::size_t>(axis)]; }

  std::size_t add(std::size_t a, std::size_t b) const noexcept;
  std::size_t sub(std::size_t a, std::size_t b) const noexcept;
  std::size_t neg(std::size_t a) const noexcept;

  /// sum_j a_j b_j mod N
  int dot_mod(std::size_t a, std::size_t b) const noexcept;
  /// exp(2 pi i k / N) for k in [0, N).
  cplx root(int k) const noexcept { return roots_[static_cast<std::size_t>(k)]; }
  /// <xi, x> = exp(2 pi i xi.x / N) on linear indices.
  cplx pairing(std::size_t xi, std::size_t x) const noexcept { return roots_[static_cast<std::size_t>(dot_mod(xi, x))]; }

 private:
  GroupSpec spec_;
  std::size_t size_ = 0;
  std::vector<std::size_t> strides_;
  std::vector<int> coord_table_;
  std::vector<cplx> roots_;
};

/// Duality pairing on typed coordinates; throws DimensionMismatch.
cplx pairing(const Ambient& ambient, const Freq& xi, const Point& x);

struct Lattice {
  std::vector<std::vector<int>> generators;  // generator columns, each of length d
  std::vector<std::size_t> elements;         // sorted indices
  std::vector<char> member;                  // indexed by point

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(std::size_t idx) const noexcept { return member[idx] != 0; }
};

/// Subgroup of (Z_N)^d generated by the given columns.
Lattice enumerate_lattice(const Ambient& ambient, const std::vector<std::vector<int>>& generator_columns);

struct Annihilator {
  std::vector<std::size_t> elements;  // sorted frequency indices
  std::vector<long> position;         // frequency index -> position in elements, -1 if absent

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(std::size_t freq) const noexcept { return position[freq] >= 0; }
  std::size_t pos(std::size_t freq) const noexcept { return static_cast<std::size_t>(position[freq]); }
};

Annihilator annihilator(const Ambient& ambient, const Lattice& lattice);

struct Reduced {
  std::size_t rep = 0;  // index into CosetSection::reps
  std::size_t ann = 0;  // position in the annihilator
  friend bool operator==(const Reduced&, const Reduced&) = default;
};

struct CosetSection {
  std::vector<std::size_t> reps;  // frequency index of each representative, ascending
  std::vector<Reduced> table;     // frequency index -> (rep, annihilator position)

  std::size_t size() const noexcept { return reps.size(); }
  Reduced reduce(std::size_t freq) const noexcept { return table[freq]; }
};

/// Lexicographically smallest representative of every coset of the annihilator.
CosetSection coset_section(const Ambient& ambient, const Annihilator& ann);

}  // namespace crystinv
