#include <random>

#include "doctest.h"
#include "support.hpp"
#include "crystinv/error.hpp"
#include "crystinv/spectra.hpp"

using namespace crystinv;

namespace {

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix a(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) a(r, c) = cplx(normal(rng), normal(rng));
  return a + a.adjoint();
}

CMatrix random_psd(std::size_t n, std::size_t rank, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix b(n, rank);
  for (std::size_t c = 0; c < rank; ++c)
    for (std::size_t r = 0; r < n; ++r) b(r, c) = cplx(normal(rng), normal(rng));
  return b * b.adjoint();
}

CMatrix diag(std::initializer_list<double> d) {
  CMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST_CASE("eigenvalues of small examples") {
  CMatrix a(2, 2);
  a(0, 0) = 2;
  a(1, 1) = 2;
  a(0, 1) = 1;
  a(1, 0) = 1;
  auto sp = eig_hermitian(a);
  CHECK(std::abs(sp.values[0] - 3.0) < 1e-14);
  CHECK(std::abs(sp.values[1] - 1.0) < 1e-14);

  auto d = eig_hermitian(diag({1.0, 4.0, -2.0, 3.0}));
  CHECK(d.values == std::vector<double>{4.0, 3.0, 1.0, -2.0});
  CHECK(d.vectors(1, 0) == cplx(1.0));
  CHECK(d.vectors(3, 1) == cplx(1.0));
  CHECK(d.sweeps == 0);
}

TEST_CASE("Jacobi invariants on random Hermitian matrices") {
  std::mt19937_64 rng(21);
  for (std::size_t n : {1u, 2u, 5u, 16u, 33u, 64u}) {
    auto a = random_hermitian(n, rng);
    auto sp = eig_hermitian(a);
    const double na = frobenius_norm(a);
    CHECK(sp.sweeps <= 30);
    CHECK(sp.off_norm <= 1e-12 * na);
    double sum = 0.0, sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) CHECK(sp.values[k - 1] >= sp.values[k]);
      auto av = multiply(a, sp.vectors.col(k));
      double res = 0.0;
      for (std::size_t r = 0; r < n; ++r) res += std::norm(av[r] - sp.values[k] * sp.vectors(r, k));
      CHECK(std::sqrt(res) <= 1e-10 * na);
      sum += sp.values[k];
      sq += sp.values[k] * sp.values[k];
    }
    CHECK(frobenius_distance(sp.vectors.adjoint() * sp.vectors, CMatrix::identity(n)) < 1e-10);
    CHECK(std::abs(sum - trace_real(a)) < 1e-10 * na);
    CHECK(std::abs(std::sqrt(sq) - na) < 1e-10 * na);
  }
}

TEST_CASE("eigenvector phase convention") {
  std::mt19937_64 rng(22);
  auto a = random_hermitian(6, rng);
  auto sp = eig_hermitian(a);
  for (std::size_t k = 0; k < 6; ++k) {
    std::size_t best = 0;
    for (std::size_t r = 0; r < 6; ++r)
      if (std::abs(sp.vectors(r, k)) > std::abs(sp.vectors(best, k))) best = r;
    CHECK(sp.vectors(best, k).imag() == 0.0);
    CHECK(sp.vectors(best, k).real() > 0.0);
  }
}

TEST_CASE("eigensolver errors") {
  CMatrix a(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_hermitian(a), Error);
  try {
    eig_hermitian(a);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
  try {
    eig_hermitian(diag({1.0, -1.0}), true);
    FAIL("expected NotPsd");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPsd);
  }
  auto clamped = eig_hermitian(diag({1.0, -1e-14}), true);
  CHECK(clamped.values[1] == 0.0);
  auto zero = eig_hermitian(CMatrix(3, 3));
  CHECK(zero.values == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("lexicographic labels") {
  Spectrum sp;
  sp.values = {4, 3, 2, 1};
  auto l = label_lex(sp, 2, 2);
  CHECK(l.labels == std::vector<Label>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  Spectrum one;
  one.values = {1};
  CHECK(label_lex(one, 1, 1).labels == std::vector<Label>{{0, 0}});
  CHECK_THROWS_AS(label_lex(sp, 3, 2), Error);
}

TEST_CASE("pseudoinverse square root") {
  auto f = pinv_sqrt(diag({4.0, 0.0}), 1e-12);
  CHECK(std::abs(f.matrix(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(f.matrix(1, 1)) < 1e-15);
  CHECK(f.rank == 1);
  auto id = pinv_sqrt(CMatrix::identity(3), 1e-12);
  CHECK(frobenius_distance(id.matrix, CMatrix::identity(3)) < 1e-14);

  std::mt19937_64 rng(23);
  for (std::size_t rank : {1u, 3u, 6u}) {
    auto g = random_psd(6, rank, rng);
    auto p = pinv_sqrt(g, 1e-12);
    CHECK(p.rank == rank);
    auto prod = p.matrix * g * p.matrix;
    auto sp = eig_hermitian(prod);
    for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(sp.values[k] - (k < rank ? 1.0 : 0.0)) < 1e-10);
    CHECK(frobenius_distance(prod * prod, prod) < 1e-10);
  }
}

TEST_CASE("cut tie detection") {
  std::vector<double> a{3, 1};
  CHECK_FALSE(detect_cut_tie(a, 1, 1e-9, 1.0).tie);
  std::vector<double> b{2, 2, 0};
  auto w = detect_cut_tie(b, 1, 1e-9, 1.0);
  CHECK(w.tie);
  CHECK(w.begin == 0);
  CHECK(w.end == 2);
  const double scale = 10.0, tau = 1e-9;
  std::vector<double> c{5, 5 - tau / 2 * scale, 1};
  CHECK(detect_cut_tie(c, 1, tau, scale).tie);
  std::vector<double> d{7, 5, 5, 5, 1};
  auto wd = detect_cut_tie(d, 2, tau, 1.0);
  CHECK(wd.begin == 1);
  CHECK(wd.end == 4);
  CHECK_FALSE(detect_cut_tie(d, 0, tau, 1.0).tie);
  CHECK_FALSE(detect_cut_tie(d, 5, tau, 1.0).tie);
}

TEST_CASE("Reynolds symmetrization") {
  CMatrix swap(2, 2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  std::vector<CMatrix> h{CMatrix::identity(2), swap};
  CMatrix p(2, 2);
  p(0, 0) = 1;
  try {
    reynolds_symmetrize(p, h);
    FAIL("expected RankCollapse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankCollapse);
  }
  std::vector<CMatrix> trivial{CMatrix::identity(2)};
  CHECK(frobenius_distance(reynolds_symmetrize(p, trivial), p) < 1e-10);
  CMatrix sym(2, 2);
  sym(0, 0) = sym(0, 1) = sym(1, 0) = sym(1, 1) = 0.5;
  auto out = reynolds_symmetrize(sym, h);
  CHECK(frobenius_distance(out, sym) < 1e-10);
  for (const auto& u : h) CHECK(frobenius_distance(u * out, out * u) < 1e-9);
}
