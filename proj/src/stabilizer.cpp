#include "crystinv/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crystinv/error.hpp"
#include "crystinv/spectra.hpp"

namespace crystinv {

namespace {

constexpr int kAttempts = 8;

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix x(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r <= c; ++r) {
      const cplx v = r == c ? cplx(normal(rng), 0.0) : cplx(normal(rng), normal(rng));
      x(r, c) = v;
      x(c, r) = std::conj(v);
    }
  return x;
}

CVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CVector v(n);
  for (auto& x : v) x = cplx(normal(rng), normal(rng));
  return v;
}

/// Consecutive runs of values whose neighbours differ by at most tol.
std::vector<std::pair<std::size_t, std::size_t>> clusters(const std::vector<double>& values, std::size_t count,
                                                          double tol) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  for (std::size_t k = 1; k <= count; ++k)
    if (k == count || std::abs(values[k - 1] - values[k]) > tol) {
      out.emplace_back(begin, k);
      begin = k;
    }
  return out;
}

bool same_character(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t h = 0; h < a.size(); ++h)
    if (std::abs(a[h] - b[h]) > 1e-6) return false;
  return true;
}

std::size_t degree(const IrreduciblePiece& p) { return p.basis.cols(); }

}  // namespace

StabilizerRep stabilizer_rep(const CrystalModel& model, const OrbitRecord& orbit) {
  StabilizerRep rep;
  rep.elements = orbit.stabilizer;
  for (std::size_t h : orbit.stabilizer) rep.matrices.push_back(model.rho(h, orbit.rep).matrix());
  return rep;
}

std::vector<IrreduciblePiece> split_irreducibles(const CMatrix& basis, const StabilizerRep& rep, std::mt19937_64& rng,
                                                 double weight) {
  const std::size_t k = basis.cols();
  if (k == 0) return {};
  const CMatrix wa = basis.adjoint();
  std::vector<CMatrix> restricted;
  for (const auto& m : rep.matrices) restricted.push_back(wa * m * basis);
  const auto order = static_cast<double>(rep.order());

  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const CMatrix x = random_hermitian(k, rng);
    CMatrix y(k, k);
    for (const auto& r : restricted) y += r * x * r.adjoint();
    y *= 1.0 / order;
    const Spectrum sp = eig_hermitian(y);
    const double tol = 1e-7 * std::max(1.0, frobenius_norm(y));

    std::vector<IrreduciblePiece> pieces;
    bool ok = true;
    for (auto [b, e] : clusters(sp.values, k, tol)) {
      const CMatrix vecs = sp.vectors.columns(b, e - b);
      IrreduciblePiece piece;
      double norm_sq = 0.0;
      for (const auto& r : restricted) {
        const CMatrix rv = r * vecs;
        const CMatrix inner_block = vecs.adjoint() * rv;
        cplx chi{};
        for (std::size_t d = 0; d < inner_block.rows(); ++d) chi += inner_block(d, d);
        piece.character.push_back(chi);
        norm_sq += std::norm(chi);
        if (frobenius_distance(rv, vecs * inner_block) > 1e-7) ok = false;
      }
      if (std::abs(norm_sq / order - 1.0) > 1e-6) ok = false;
      if (!ok) break;
      piece.basis = basis * vecs;
      piece.weight = weight;
      pieces.push_back(std::move(piece));
    }
    if (ok) return pieces;
  }
  throw Error(ErrorKind::ConvergenceFailure, "could not split an invariant fiber subspace into irreducibles");
}

std::vector<std::vector<std::size_t>> group_by_character(const std::vector<IrreduciblePiece>& pieces) {
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    auto it = std::find_if(classes.begin(), classes.end(), [&](const std::vector<std::size_t>& c) {
      return same_character(pieces[c.front()].character, pieces[p].character);
    });
    if (it == classes.end()) classes.push_back({p});
    else it->push_back(p);
  }
  return classes;
}

bool capacity_feasible(const CMatrix& basis, const StabilizerRep& rep, std::size_t q, std::mt19937_64& rng,
                       double tol) {
  if (basis.cols() == 0) return true;
  const CMatrix p = basis * basis.adjoint();
  for (const auto& m : rep.matrices)
    if (frobenius_distance(m * p, p * m) > tol) return false;
  const auto pieces = split_irreducibles(basis, rep, rng);
  for (const auto& cls : group_by_character(pieces))
    if (cls.size() > q * degree(pieces[cls.front()])) return false;
  return true;
}

ConstrainedChoice constrained_top(const CMatrix& covariance, const StabilizerRep& rep, std::size_t q, double tie_tol,
                                  double threshold, std::mt19937_64& rng) {
  const Spectrum sp = eig_hermitian(covariance, true);
  std::size_t positive = 0;
  while (positive < sp.values.size() && sp.values[positive] > threshold) ++positive;
  const double scale = frobenius_norm(covariance);

  std::vector<IrreduciblePiece> pieces;
  for (auto [b, e] : clusters(sp.values, positive, tie_tol * scale)) {
    const double mean = std::accumulate(sp.values.begin() + static_cast<std::ptrdiff_t>(b),
                                        sp.values.begin() + static_cast<std::ptrdiff_t>(e), 0.0) /
                        static_cast<double>(e - b);
    auto part = split_irreducibles(sp.vectors.columns(b, e - b), rep, rng, mean);
    for (auto& piece : part) pieces.push_back(std::move(piece));
  }

  std::vector<char> keep(pieces.size(), 0);
  for (const auto& cls : group_by_character(pieces)) {
    const std::size_t cap = q * degree(pieces[cls.front()]);
    // pieces arrive in non-increasing weight order, so the head of each class is the heaviest
    for (std::size_t k = 0; k < cls.size() && k < cap; ++k) keep[cls[k]] = 1;
  }

  std::vector<CVector> cols;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    if (!keep[p]) continue;
    for (std::size_t c = 0; c < pieces[p].basis.cols(); ++c) {
      auto src = pieces[p].basis.col(c);
      cols.emplace_back(src.begin(), src.end());
    }
  }
  ConstrainedChoice out;
  out.basis = CMatrix::from_columns(covariance.rows(), cols);
  if (!cols.empty()) out.captured = trace_real(out.basis.adjoint() * covariance * out.basis);
  return out;
}

CMatrix covariant_parseval(const CMatrix& basis, const PointGroup& group, const StabilizerRep& rep, std::size_t kappa,
                           std::mt19937_64& rng, double tol) {
  const std::size_t n = basis.rows();
  const std::size_t order = group.size();
  CMatrix zero(n, kappa * order);
  if (basis.cols() == 0) return zero;

  // right coset representatives of H in G
  std::vector<std::size_t> coset_reps;
  std::vector<char> covered(order, 0);
  for (std::size_t g = 0; g < order; ++g) {
    if (covered[g]) continue;
    coset_reps.push_back(g);
    for (std::size_t h : rep.elements) covered[group.mul(h, g)] = 1;
  }

  const CMatrix target = basis * basis.adjoint();
  std::vector<CMatrix> lambdas;
  for (std::size_t h : rep.elements) lambdas.push_back(lambda_rep(group, h, kappa).matrix());

  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    CMatrix b(n, kappa * order);
    for (std::size_t i = 0; i < kappa; ++i)
      for (std::size_t gc : coset_reps) {
        const CVector v = multiply(basis, multiply_adjoint(basis, random_vector(n, rng)));
        for (std::size_t k = 0; k < rep.order(); ++k) {
          const CVector moved = multiply(rep.matrices[k], v);
          std::copy(moved.begin(), moved.end(), b.col(i * order + group.mul(rep.elements[k], gc)).begin());
        }
      }
    const CMatrix h = b * pinv_sqrt(b.adjoint() * b, 1e-10).matrix;
    bool ok = frobenius_distance(h * h.adjoint(), target) <= tol * std::max(1.0, frobenius_norm(target));
    for (std::size_t k = 0; ok && k < rep.order(); ++k)
      ok = frobenius_distance(rep.matrices[k] * h, h * lambdas[k]) <= tol;
    if (ok) return h;
  }
  throw Error(ErrorKind::ConvergenceFailure, "covariant Parseval factor did not reach the target projection");
}

}  // namespace crystinv
