#include "crystinv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "crystinv/error.hpp"
#include "crystinv/options.hpp"

namespace crystinv::oracle {

namespace {

int wrap(long long v, int n) {
  long long r = v % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

/// Row-major coordinate codec for (Z_N)^d.
struct Grid {
  int n;
  int d;
  std::size_t size;

  explicit Grid(const Instance& inst) : n(inst.modulus), d(inst.dimension), size(1) {
    for (int j = 0; j < d; ++j) size *= static_cast<std::size_t>(n);
  }

  std::vector<int> decode(std::size_t idx) const {
    std::vector<int> c(static_cast<std::size_t>(d));
    for (int j = d - 1; j >= 0; --j) {
      c[static_cast<std::size_t>(j)] = static_cast<int>(idx % static_cast<std::size_t>(n));
      idx /= static_cast<std::size_t>(n);
    }
    return c;
  }

  std::size_t encode(const std::vector<int>& c) const {
    std::size_t idx = 0;
    for (int v : c) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(wrap(v, n));
    return idx;
  }
};

std::vector<std::vector<int>> lattice_points(const Instance& inst, const Grid& grid) {
  std::vector<char> in(grid.size, 0);
  std::vector<std::vector<int>> pts{std::vector<int>(static_cast<std::size_t>(grid.d), 0)};
  in[0] = 1;
  for (std::size_t head = 0; head < pts.size(); ++head)
    for (const auto& gen : inst.lattice_columns) {
      std::vector<int> next = pts[head];
      for (std::size_t j = 0; j < next.size(); ++j) next[j] = wrap(next[j] + gen[j], grid.n);
      const std::size_t idx = grid.encode(next);
      if (!in[idx]) {
        in[idx] = 1;
        pts.push_back(next);
      }
    }
  return pts;
}

cx dot(const Vec& a, const Vec& b) {  // sum a_i conj(b_i)
  cx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

double length(const Vec& a) { return std::sqrt(std::real(dot(a, a))); }

using Dense = std::vector<Vec>;  // row-major square matrix

Vec mat_vec(const Dense& m, const Vec& v) {
  Vec out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    cx s{};
    for (std::size_t c = 0; c < v.size(); ++c) s += m[r][c] * v[c];
    out[r] = s;
  }
  return out;
}

double frobenius(const Dense& m) {
  double s = 0.0;
  for (const auto& row : m)
    for (auto x : row) s += std::norm(x);
  return std::sqrt(s);
}

Dense projector_from(const std::vector<Vec>& basis, std::size_t n) {
  Dense p(n, Vec(n));
  for (const auto& q : basis)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) p[r][c] += q[r] * std::conj(q[c]);
  return p;
}

/// Largest eigenvalue of a Hermitian PSD matrix by power iteration.
double top_eigenvalue_psd(const Dense& m, std::uint64_t seed) {
  const std::size_t n = m.size();
  if (n == 0 || frobenius(m) == 0.0) return 0.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vec v(n);
  for (auto& x : v) x = cx(normal(rng), normal(rng));
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    const double nv = length(v);
    for (auto& x : v) x /= nv;
    Vec w = mat_vec(m, v);
    const double next = std::real(dot(w, v));
    v = std::move(w);
    if (it > 10 && std::abs(next - lambda) <= 1e-15 * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return lambda;
}

/// Solves m x = b by Gaussian elimination with partial pivoting; near-zero
/// pivots are nudged, which is what inverse iteration wants.
Vec solve(Dense m, Vec b, double nudge) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(m[r][k]) > std::abs(m[piv][k])) piv = r;
    std::swap(m[k], m[piv]);
    std::swap(b[k], b[piv]);
    if (std::abs(m[k][k]) < nudge) m[k][k] = nudge;
    for (std::size_t r = k + 1; r < n; ++r) {
      const cx f = m[r][k] / m[k][k];
      if (f == cx{}) continue;
      for (std::size_t c = k; c < n; ++c) m[r][c] -= f * m[k][c];
      b[r] -= f * b[k];
    }
  }
  Vec x(n);
  for (std::size_t k = n; k-- > 0;) {
    cx s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= m[k][c] * x[c];
    x[k] = s / m[k][k];
  }
  return x;
}

std::vector<double> closed_form(const Dense& a) {
  const std::size_t n = a.size();
  if (n == 1) return {a[0][0].real()};
  if (n == 2) {
    const double p = a[0][0].real(), q = a[1][1].real();
    const double mid = 0.5 * (p + q);
    const double rad = std::sqrt(0.25 * (p - q) * (p - q) + std::norm(a[0][1]));
    return {mid + rad, mid - rad};
  }
  // characteristic polynomial x^3 - c2 x^2 + c1 x - c0, roots by the trigonometric method
  const double a00 = a[0][0].real(), a11 = a[1][1].real(), a22 = a[2][2].real();
  const cx a01 = a[0][1], a02 = a[0][2], a12 = a[1][2];
  const double c2 = a00 + a11 + a22;
  const double c1 = a00 * a11 + a00 * a22 + a11 * a22 - std::norm(a01) - std::norm(a02) - std::norm(a12);
  const double c0 = a00 * a11 * a22 + 2.0 * std::real(a01 * a12 * std::conj(a02)) - a00 * std::norm(a12) -
                    a11 * std::norm(a02) - a22 * std::norm(a01);
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;                                   // depressed: y^3 + p y + q
  const double q = -2.0 * c2 * c2 * c2 / 27.0 + c2 * c1 / 3.0 - c0;
  std::vector<double> roots;
  if (p >= 0.0) {
    roots.assign(3, shift);
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * r);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(shift + r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0));
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

}  // namespace

std::vector<Vec> orbit(const Instance& inst, const std::vector<Vec>& generators) {
  const Grid grid(inst);
  const auto lattice = lattice_points(inst, grid);
  const std::size_t total = lattice.size() * inst.group_matrices.size() * generators.size();
  if (total > kOrbitCap)
    throw Error(ErrorKind::OracleCapExceeded,
                "orbit has " + std::to_string(total) + " vectors, cap is " + std::to_string(kOrbitCap));
  const auto d = static_cast<std::size_t>(grid.d);

  // (T_k R_g psi)(g y + k) = psi(y)
  std::vector<std::vector<std::size_t>> moved_by_g;
  for (const auto& mat : inst.group_matrices) {
    std::vector<std::size_t> map(grid.size);
    for (std::size_t y = 0; y < grid.size; ++y) {
      const auto c = grid.decode(y);
      std::vector<int> gy(d);
      for (std::size_t i = 0; i < d; ++i) {
        long long s = 0;
        for (std::size_t k = 0; k < d; ++k) s += static_cast<long long>(mat[i * d + k]) * c[k];
        gy[i] = wrap(s, grid.n);
      }
      map[y] = grid.encode(gy);
    }
    moved_by_g.push_back(std::move(map));
  }

  std::vector<Vec> out;
  out.reserve(total);
  for (const auto& psi : generators)
    for (const auto& k : lattice)
      for (const auto& gmap : moved_by_g) {
        Vec eta(grid.size);
        for (std::size_t y = 0; y < grid.size; ++y) {
          auto c = grid.decode(gmap[y]);
          for (std::size_t j = 0; j < d; ++j) c[j] += k[j];
          eta[grid.encode(c)] = psi[y];
        }
        out.push_back(std::move(eta));
      }
  return out;
}

std::vector<Vec> gram_schmidt(const std::vector<Vec>& vectors, double rel_tol) {
  double scale = 0.0;
  for (const auto& v : vectors) scale = std::max(scale, length(v));
  std::vector<Vec> basis;
  if (scale == 0.0) return basis;
  for (const auto& v0 : vectors) {
    Vec v = v0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        const cx c = dot(v, q);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
      }
    const double nv = length(v);
    if (nv <= rel_tol * scale) continue;
    for (auto& x : v) x /= nv;
    basis.push_back(std::move(v));
  }
  return basis;
}

FrameReport frame_operator(const Instance& inst, const std::vector<Vec>& psi, const std::vector<Vec>& spanning) {
  const Grid grid(inst);
  const std::size_t n = grid.size;
  const auto etas = orbit(inst, psi);
  const auto basis = gram_schmidt(orbit(inst, spanning));

  Dense s(n, Vec(n));
  for (const auto& eta : etas)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) s[r][c] += eta[r] * std::conj(eta[c]);
  const Dense p = projector_from(basis, n);

  Dense diff(n, Vec(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) diff[r][c] = s[r][c] - p[r][c];

  FrameReport rep;
  rep.subspace_dim = basis.size();
  rep.frobenius_gap = frobenius(diff);
  for (std::size_t c = 0; c < n; ++c) {
    double col = 0.0;
    for (std::size_t r = 0; r < n; ++r) col += std::norm(diff[r][c]);
    rep.worst_vector_gap = std::max(rep.worst_vector_gap, std::sqrt(col));
  }
  // ||D||_2^2 is the top eigenvalue of D^* D = D^2
  Dense d2(n, Vec(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      if (diff[r][k] == cx{}) continue;
      for (std::size_t c = 0; c < n; ++c) d2[r][c] += diff[r][k] * diff[k][c];
    }
  rep.operator_norm_gap = std::sqrt(std::max(0.0, top_eigenvalue_psd(d2, 1)));

  // frame bounds: extreme eigenvalues of S compressed to W
  const std::size_t k = basis.size();
  if (k > 0) {
    Dense w(k, Vec(k));
    for (std::size_t a = 0; a < k; ++a) {
      const Vec sa = mat_vec(s, basis[a]);
      for (std::size_t b = 0; b < k; ++b) w[b][a] = dot(sa, basis[b]);
    }
    rep.upper_bound = top_eigenvalue_psd(w, 2);
    Dense flipped = w;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) flipped[a][b] = (a == b ? rep.upper_bound : 0.0) - w[a][b];
    rep.lower_bound = rep.upper_bound - top_eigenvalue_psd(flipped, 3);
  }
  return rep;
}

double brute_projection_error(const Instance& inst, const std::vector<Vec>& data, const std::vector<Vec>& spanning) {
  const auto basis = spanning.empty() ? std::vector<Vec>{} : gram_schmidt(orbit(inst, spanning));
  double total = 0.0;
  for (const auto& f : data) {
    Vec r = f;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        const cx c = dot(r, q);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * q[i];
      }
    total += std::real(dot(r, r));
  }
  return total;
}

std::vector<double> eig_reference(const std::vector<Vec>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) return {};
  if (n <= 3) return closed_form(rows);

  const double norm = frobenius(rows);
  if (norm == 0.0) return std::vector<double>(n, 0.0);
  // B = A + s I is positive definite with spectrum in [0.5 s', 2.5 s']; deflated pairs drop to 0
  const double shift = 1.5 * norm;
  Dense b = rows;
  for (std::size_t i = 0; i < n; ++i) b[i][i] += shift;

  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  std::vector<double> values;
  for (std::size_t found = 0; found < n; ++found) {
    Vec v(n);
    for (auto& x : v) x = cx(normal(rng), normal(rng));
    double mu = 0.0;
    for (int it = 0; it < 3000; ++it) {
      const double nv = length(v);
      for (auto& x : v) x /= nv;
      Vec w = mat_vec(b, v);
      const double next = std::real(dot(w, v));
      v = std::move(w);
      if (it > 10 && std::abs(next - mu) <= 1e-13 * std::abs(next)) {
        mu = next;
        break;
      }
      mu = next;
    }
    double nv = length(v);
    for (auto& x : v) x /= nv;
    // Rayleigh quotient refinement on the deflated matrix
    for (int it = 0; it < 8; ++it) {
      mu = std::real(dot(mat_vec(b, v), v));
      Dense shifted = b;
      for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= mu;
      Vec w = solve(shifted, v, 1e-300 + 1e-15 * norm);
      nv = length(w);
      if (!std::isfinite(nv) || nv == 0.0) break;
      for (auto& x : w) x /= nv;
      v = std::move(w);
    }
    mu = std::real(dot(mat_vec(b, v), v));
    const Vec bv = mat_vec(b, v);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += std::norm(bv[i] - mu * v[i]);
    if (std::sqrt(res) > 1e-9 * norm)
      throw Error(ErrorKind::ConvergenceFailure, "reference eigenpair did not converge");
    values.push_back(mu - shift);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) b[r][c] -= mu * v[r] * std::conj(v[c]);
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double perturbation_probe(const std::vector<Vec>& columns, const std::vector<Vec>& basis, int trials,
                          std::uint64_t seed, double max_angle) {
  if (columns.empty()) return 0.0;
  const std::size_t n = columns.front().size();
  if (basis.empty() || basis.size() >= n) return 0.0;
  auto random_unit = [&](std::mt19937_64& rng, auto&& keep) {
    std::normal_distribution<double> normal;
    Vec z(n);
    for (auto& x : z) x = cx(normal(rng), normal(rng));
    keep(z);
    const double nz = length(z);
    for (auto& x : z) x /= nz;
    return z;
  };
  auto into_j = [&](Vec& z) {
    Vec out(n);
    for (const auto& q : basis) {
      const cx c = dot(z, q);
      for (std::size_t i = 0; i < n; ++i) out[i] += c * q[i];
    }
    z = std::move(out);
  };
  auto out_of_j = [&](Vec& z) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        const cx c = dot(z, q);
        for (std::size_t i = 0; i < n; ++i) z[i] -= c * q[i];
      }
  };

  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const Vec x = random_unit(rng, into_j);
    const Vec y = random_unit(rng, out_of_j);
    const double theta = max_angle * (1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng));  // (0, max_angle]
    Vec z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::cos(theta) * x[i] + std::sin(theta) * y[i];
    // P_{J'} = P_J - x x^* + z z^*, so the residual drops by sum |<a,z>|^2 - |<a,x>|^2
    double gain = 0.0;
    for (const auto& a : columns) gain += std::norm(dot(a, z)) - std::norm(dot(a, x));
    worst = std::max(worst, gain);
  }
  return worst;
}

}  // namespace crystinv::oracle
