#include "crystinv/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "crystinv/error.hpp"

namespace crystinv {

namespace {

int mod(long long v, int n) {
  long long r = v % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

long long det_rec(const std::vector<long long>& m, std::size_t n, int modulus) {
  if (n == 1) return m[0] % modulus;
  if (n == 2) return (m[0] * m[3] - m[1] * m[2]) % modulus;
  long long det = 0;
  std::vector<long long> minor((n - 1) * (n - 1));
  for (std::size_t col = 0; col < n; ++col) {
    if (m[col] == 0) continue;
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t mc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == col) continue;
        minor[(r - 1) * (n - 1) + mc++] = m[r * n + c];
      }
    }
    const long long sub = det_rec(minor, n - 1, modulus);
    const long long term = (m[col] * sub) % modulus;
    det = (col % 2 == 0) ? det + term : det - term;
    det %= modulus;
  }
  return det;
}

std::vector<int> matmul_mod(const std::vector<int>& a, const std::vector<int>& b, std::size_t d, int n) {
  std::vector<int> out(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      long long s = 0;
      for (std::size_t k = 0; k < d; ++k) s += static_cast<long long>(a[i * d + k]) * b[k * d + j];
      out[i * d + j] = mod(s, n);
    }
  return out;
}

std::vector<std::size_t> tabulate_action(const Ambient& ambient, const std::vector<int>& m, bool transpose) {
  const auto d = static_cast<std::size_t>(ambient.dimension());
  std::vector<std::size_t> out(ambient.size());
  std::vector<int> y(d);
  for (std::size_t x = 0; x < ambient.size(); ++x) {
    auto c = ambient.coords(x);
    for (std::size_t i = 0; i < d; ++i) {
      long long s = 0;
      for (std::size_t k = 0; k < d; ++k) s += static_cast<long long>(transpose ? m[k * d + i] : m[i * d + k]) * c[k];
      y[i] = mod(s, ambient.modulus());
    }
    out[x] = ambient.index(y);
  }
  return out;
}

}  // namespace

int determinant_mod(const std::vector<int>& matrix, int dimension, int modulus) {
  const auto d = static_cast<std::size_t>(dimension);
  std::vector<long long> m(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) m[i] = mod(matrix[i], modulus);
  return mod(det_rec(m, d, modulus), modulus);
}

PointGroup validate_point_group(const Ambient& ambient, const std::vector<std::vector<int>>& matrices,
                                const Lattice& lattice) {
  const auto d = static_cast<std::size_t>(ambient.dimension());
  const int n = ambient.modulus();
  if (matrices.empty()) throw Error(ErrorKind::NotAGroup, "point group is empty");

  std::vector<std::vector<int>> reduced;
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    if (matrices[i].size() != d * d)
      throw Error(ErrorKind::DimensionMismatch, "point_group[" + std::to_string(i) + "] is not " +
                                                    std::to_string(d) + "x" + std::to_string(d));
    std::vector<int> m(d * d);
    for (std::size_t k = 0; k < d * d; ++k) m[k] = mod(matrices[i][k], n);
    const int det = determinant_mod(m, ambient.dimension(), n);
    if (std::gcd(det, n) != 1)
      throw Error(ErrorKind::NotInvertible, "point_group[" + std::to_string(i) + "] has determinant " +
                                                std::to_string(det) + ", not a unit mod " + std::to_string(n));
    reduced.push_back(std::move(m));
  }

  std::vector<int> eye(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) eye[i * d + i] = 1 % n;
  auto id_it = std::find(reduced.begin(), reduced.end(), eye);
  if (id_it == reduced.end()) throw Error(ErrorKind::NotAGroup, "identity matrix missing");
  std::vector<std::size_t> order{static_cast<std::size_t>(id_it - reduced.begin())};
  for (std::size_t i = 0; i < reduced.size(); ++i)
    if (i != order[0]) order.push_back(i);

  PointGroup group;
  std::map<std::vector<int>, std::size_t> lookup;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto& m = reduced[order[pos]];
    if (!lookup.emplace(m, pos).second)
      throw Error(ErrorKind::NotAGroup, "point_group[" + std::to_string(order[pos]) + "] duplicates another element");
    group.elements_.push_back(PointGroupElement{m, pos});
  }

  const std::size_t size = group.elements_.size();
  group.mul_table_.resize(size * size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      auto prod = matmul_mod(group.elements_[a].matrix, group.elements_[b].matrix, d, n);
      auto it = lookup.find(prod);
      if (it == lookup.end())
        throw Error(ErrorKind::NotAGroup, "product of point_group[" + std::to_string(order[a]) + "] and point_group[" +
                                              std::to_string(order[b]) + "] is not in the set (closure fails)");
      group.mul_table_[a * size + b] = it->second;
    }

  group.inv_table_.resize(size);
  for (std::size_t a = 0; a < size; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < size; ++b)
      if (group.mul_table_[a * size + b] == 0 && group.mul_table_[b * size + a] == 0) {
        group.inv_table_[a] = b;
        found = true;
        break;
      }
    if (!found) throw Error(ErrorKind::NotAGroup, "point_group[" + std::to_string(order[a]) + "] has no inverse");
  }

  for (std::size_t g = 0; g < size; ++g) {
    group.space_map_.push_back(tabulate_action(ambient, group.elements_[g].matrix, false));
    group.dual_map_.push_back(tabulate_action(ambient, group.elements_[g].matrix, true));
    for (std::size_t k : lattice.elements)
      if (!lattice.contains(group.space_map_[g][k]))
        throw Error(ErrorKind::LatticeNotPreserved,
                    "point_group[" + std::to_string(order[g]) + "] maps a lattice element outside the lattice");
  }
  return group;
}

GammaElement gamma_compose(const Ambient& ambient, const PointGroup& group, GammaElement a, GammaElement b) {
  return GammaElement{ambient.add(a.k, group.act_space(a.g, b.k)), group.mul(a.g, b.g)};
}

std::size_t act_on_section(const CosetSection& section, const PointGroup& group, std::size_t g, std::size_t omega) {
  return section.reduce(group.act_dual(g, section.reps[omega])).rep;
}

Permutation r_rep(const Annihilator& ann, const PointGroup& group, std::size_t g) {
  Permutation p;
  p.map.resize(ann.size());
  for (std::size_t i = 0; i < ann.size(); ++i) p.map[i] = ann.pos(group.act_dual(g, ann.elements[i]));
  return p;
}

Permutation section_rotation(const Ambient& ambient, const Annihilator& ann, const CosetSection& section,
                             const PointGroup& group, std::size_t g, std::size_t omega) {
  const Reduced red = section.reduce(group.act_dual(g, section.reps[omega]));
  const std::size_t shift = ann.elements[red.ann];
  Permutation p;
  p.map.resize(ann.size());
  for (std::size_t i = 0; i < ann.size(); ++i)
    p.map[i] = ann.pos(ambient.add(group.act_dual(g, ann.elements[i]), shift));
  return p;
}

Permutation lambda_rep(const PointGroup& group, std::size_t g, std::size_t n) {
  const std::size_t order = group.size();
  const std::size_t ginv = group.inv(g);
  Permutation p;
  p.map.resize(n * order);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t h = 0; h < order; ++h) p.map[j * order + h] = j * order + group.mul(ginv, h);
  return p;
}

std::vector<OrbitRecord> orbit_partition(const CosetSection& section, const PointGroup& group) {
  std::vector<OrbitRecord> orbits;
  std::vector<char> seen(section.size(), 0);
  for (std::size_t omega = 0; omega < section.size(); ++omega) {
    if (seen[omega]) continue;
    OrbitRecord rec;
    rec.rep = omega;
    for (std::size_t g = 0; g < group.size(); ++g) {
      const std::size_t image = act_on_section(section, group, g, omega);
      if (image == omega) rec.stabilizer.push_back(g);
      if (!seen[image]) {
        seen[image] = 1;
        rec.members.push_back(OrbitMember{g, image});
      }
    }
    orbits.push_back(std::move(rec));
  }
  return orbits;
}

CrystalModel::CrystalModel(GroupSpec spec, const std::vector<std::vector<int>>& lattice_columns,
                           const std::vector<std::vector<int>>& point_group_matrices)
    : ambient_(spec),
      lattice_(enumerate_lattice(ambient_, lattice_columns)),
      ann_(crystinv::annihilator(ambient_, lattice_)),
      section_(coset_section(ambient_, ann_)),
      group_(validate_point_group(ambient_, point_group_matrices, lattice_)),
      orbits_(orbit_partition(section_, group_)) {
  slots_.resize(section_.size());
  for (std::size_t o = 0; o < orbits_.size(); ++o)
    for (std::size_t m = 0; m < orbits_[o].members.size(); ++m) slots_[orbits_[o].members[m].omega] = OrbitSlot{o, m};

  act_.resize(group_.size() * section_.size());
  rho_.reserve(act_.size());
  for (std::size_t g = 0; g < group_.size(); ++g) {
    r_.push_back(r_rep(ann_, group_, g));
    for (std::size_t omega = 0; omega < section_.size(); ++omega) {
      act_[g * section_.size() + omega] = act_on_section(section_, group_, g, omega);
      rho_.push_back(section_rotation(ambient_, ann_, section_, group_, g, omega));
    }
  }
}

}  // namespace crystinv
