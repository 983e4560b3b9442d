#include "crystinv/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crystinv/error.hpp"

namespace crystinv {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kStopRatio = 1e-15;
constexpr double kAcceptRatio = 1e-12;

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

/// A <- W^* A W and V <- V W for the 2x2 unitary W acting on indices p, q.
void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q, const cplx w[2][2]) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * w[0][0] + akq * w[1][0];
    a(k, q) = akp * w[0][1] + akq * w[1][1];
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(w[0][0]) * apk + std::conj(w[1][0]) * aqk;
    a(q, k) = std::conj(w[0][1]) * apk + std::conj(w[1][1]) * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * w[0][0] + vkq * w[1][0];
    v(k, q) = vkp * w[0][1] + vkq * w[1][1];
  }
}

void fix_phase(std::span<cplx> column) {
  std::size_t best = 0;
  double best_mod = -1.0;
  for (std::size_t k = 0; k < column.size(); ++k) {
    const double m = std::abs(column[k]);
    if (m > best_mod * (1.0 + 1e-12)) {
      best_mod = m;
      best = k;
    }
  }
  if (best_mod <= 0.0) return;
  const cplx phase = std::conj(column[best]) / best_mod;
  for (auto& x : column) x *= phase;
  column[best] = best_mod;
}

}  // namespace

Spectrum eig_hermitian(const CMatrix& input, bool require_psd) {
  if (input.rows() != input.cols()) throw Error(ErrorKind::SizeMismatch, "eigendecomposition of a non-square matrix");
  const std::size_t n = input.rows();
  const double norm = frobenius_norm(input);
  if (hermitian_defect(input) > 1e-10 * norm) throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian");

  CMatrix a = input;
  for (std::size_t c = 0; c < n; ++c) {
    a(c, c) = a(c, c).real();
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  CMatrix v = CMatrix::identity(n);

  Spectrum out;
  double off = off_diagonal_norm(a);
  while (off > kStopRatio * norm && out.sweeps < kMaxSweeps) {
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx e = std::conj(apq) / mag;  // e^{-i phi}
        const cplx w[2][2] = {{c, s}, {-s * e, c * e}};
        rotate(a, v, p, q, w);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    off = off_diagonal_norm(a);
  }
  out.off_norm = off;
  if (off > kAcceptRatio * norm)
    throw Error(ErrorKind::ConvergenceFailure, "Jacobi sweeps did not reduce the off-diagonal part");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double lambda = a(order[k], order[k]).real();
    if (require_psd && lambda < 0.0) {
      if (lambda < -1e-10 * norm) throw Error(ErrorKind::NotPsd, "matrix has a negative eigenvalue");
      lambda = 0.0;
    }
    out.values[k] = lambda;
    auto src = v.col(order[k]);
    std::copy(src.begin(), src.end(), out.vectors.col(k).begin());
    fix_phase(out.vectors.col(k));
  }
  return out;
}

LabeledSpectrum label_lex(Spectrum spectrum, std::size_t m, std::size_t group_order) {
  if (spectrum.values.size() != m * group_order)
    throw Error(ErrorKind::SizeMismatch, "spectrum length differs from m |G|");
  LabeledSpectrum out{std::move(spectrum), {}};
  out.labels.reserve(m * group_order);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t g = 0; g < group_order; ++g) out.labels.push_back(Label{i, g});
  return out;
}

PsdFactor pinv_sqrt(const CMatrix& gram, double eps_rank, double floor) {
  const Spectrum sp = eig_hermitian(gram, true);
  const std::size_t n = gram.rows();
  PsdFactor out;
  out.matrix = CMatrix(n, n);
  const double top = sp.values.empty() ? 0.0 : sp.values.front();
  out.threshold = eps_rank * std::max(top, floor);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(sp.values[k] > out.threshold)) continue;
    ++out.rank;
    const double w = 1.0 / std::sqrt(sp.values[k]);
    auto vk = sp.vectors.col(k);
    for (std::size_t c = 0; c < n; ++c) {
      const cplx vc = std::conj(vk[c]) * w;
      for (std::size_t r = 0; r < n; ++r) out.matrix(r, c) += vk[r] * vc;
    }
  }
  return out;
}

TieWindow detect_cut_tie(std::span<const double> values, std::size_t cut, double tau, double scale) {
  TieWindow w{false, cut, cut};
  if (cut == 0 || cut >= values.size()) return w;
  const double tol = tau * scale;
  if (std::abs(values[cut - 1] - values[cut]) > tol) return w;
  w.tie = true;
  w.begin = cut - 1;
  w.end = cut + 1;
  while (w.begin > 0 && std::abs(values[w.begin - 1] - values[w.begin]) <= tol) --w.begin;
  while (w.end < values.size() && std::abs(values[w.end - 1] - values[w.end]) <= tol) ++w.end;
  return w;
}

CMatrix reynolds_symmetrize(const CMatrix& projection, std::span<const CMatrix> unitaries) {
  const std::size_t n = projection.rows();
  const double scale = std::max(1.0, frobenius_norm(projection));
  if (hermitian_defect(projection) > 1e-10 * scale || frobenius_distance(projection * projection, projection) > 1e-10 * scale)
    throw Error(ErrorKind::NotHermitian, "Reynolds averaging needs a Hermitian projection");
  if (unitaries.empty()) return projection;

  CMatrix avg(n, n);
  for (const auto& h : unitaries) avg += h * projection * h.adjoint();
  avg *= 1.0 / static_cast<double>(unitaries.size());

  const Spectrum sp = eig_hermitian(avg);
  std::size_t kept = 0;
  while (kept < n && sp.values[kept] > 0.5) ++kept;
  const auto rank = static_cast<std::size_t>(std::llround(trace_real(projection)));
  if (kept != rank)
    throw Error(ErrorKind::RankCollapse, "no invariant subspace of rank " + std::to_string(rank) +
                                             " inside the averaged projection (got " + std::to_string(kept) + ")");
  const CMatrix basis = leading_vectors(sp, kept);
  return basis * basis.adjoint();
}

CMatrix leading_vectors(const Spectrum& spectrum, std::size_t count) {
  return spectrum.vectors.columns(0, count);
}

CMatrix projection_basis(const CMatrix& projection) {
  const Spectrum sp = eig_hermitian(projection);
  std::size_t kept = 0;
  while (kept < sp.values.size() && sp.values[kept] > 0.5) ++kept;
  return leading_vectors(sp, kept);
}

}  // namespace crystinv
