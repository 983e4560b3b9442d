#include <random>

#include "doctest.h"
#include "support.hpp"
#include "crystinv/error.hpp"
#include "crystinv/oracle.hpp"
#include "crystinv/spectra.hpp"

using namespace crystinv;
using namespace crystinv::testing;

namespace {

std::vector<oracle::Vec> rows_of(const CMatrix& m) {
  std::vector<oracle::Vec> rows(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return rows;
}

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = cplx(normal(rng), normal(rng));
  return a + a.adjoint();
}

}  // namespace

TEST_CASE("frame operator of an orthonormal basis is the identity on its span") {
  oracle::Instance z4{4, 1, {{1}}, {{1}}};
  const std::vector<oracle::Vec> psi{delta(4, 0).values};
  auto rep = oracle::frame_operator(z4, psi, psi);
  CHECK(rep.subspace_dim == 4);
  CHECK(rep.operator_norm_gap < 1e-14);
  CHECK(rep.frobenius_gap < 1e-14);
  CHECK(std::abs(rep.lower_bound - 1.0) < 1e-12);
  CHECK(std::abs(rep.upper_bound - 1.0) < 1e-12);

  const std::vector<oracle::Vec> doubled{delta(4, 0, 2.0).values};
  auto scaled = oracle::frame_operator(z4, doubled, psi);
  CHECK(std::abs(scaled.operator_norm_gap - 3.0) < 1e-10);
  CHECK(std::abs(scaled.worst_vector_gap - 3.0) < 1e-10);
  CHECK(std::abs(scaled.upper_bound - 4.0) < 1e-10);
}

TEST_CASE("brute projection error examples") {
  const auto setup = setup_z12_pm();
  std::mt19937_64 rng(5);
  auto phi = random_family(12, 2, rng);
  // a combination of orbit vectors lies in the span
  auto orbit = oracle::orbit(setup.raw(), raw(phi));
  CHECK(orbit.size() == 4 * 2 * 2);
  oracle::Vec inside(12);
  for (std::size_t j = 0; j < orbit.size(); ++j)
    for (std::size_t x = 0; x < 12; ++x) inside[x] += static_cast<double>(j + 1) * orbit[j][x];
  CHECK(oracle::brute_projection_error(setup.raw(), {inside}, raw(phi)) < 1e-24 * std::pow(norm2(inside), 2));

  auto data = random_family(12, 3, rng);
  double energy = 0.0;
  for (const auto& f : data) energy += std::pow(signal_norm(f), 2);
  CHECK(std::abs(oracle::brute_projection_error(setup.raw(), raw(data), {}) - energy) < 1e-12 * energy);
}

TEST_CASE("orbit enumeration refuses above the cap") {
  oracle::Instance big{8, 2, {{1, 0}, {0, 1}}, {{1, 0, 0, 1}, {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0}}};
  std::mt19937_64 rng(1);
  auto ok = random_family(64, 16, rng);
  CHECK(oracle::orbit(big, raw(ok)).size() == 4096);
  auto too_many = random_family(64, 17, rng);
  try {
    (void)oracle::orbit(big, raw(too_many));
    FAIL("expected OracleCapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OracleCapExceeded);
  }
}

TEST_CASE("orbit matches the main pipeline's translate and rotate") {
  const auto setup = setup_z8sq_c4();
  const auto model = setup.model();
  std::mt19937_64 rng(8);
  auto psi = random_signal(64, rng);
  auto orbit = oracle::orbit(setup.raw(), {psi.values});
  REQUIRE(orbit.size() == model.lattice_size() * model.group_size());
  // every T_k R_g psi appears somewhere in the oracle orbit
  for (std::size_t k : model.lattice().elements)
    for (std::size_t g = 0; g < model.group_size(); ++g) {
      auto eta = translate(model.ambient(), k, rotate(model.group(), g, psi));
      double best = 1e300;
      for (const auto& o : orbit) best = std::min(best, signal_distance(eta, Signal{o}));
      CHECK(best < 1e-14);
    }
}

TEST_CASE("eig_reference closed forms") {
  using oracle::cx;
  auto two = oracle::eig_reference({{2.0, 1.0}, {1.0, 2.0}});
  CHECK(two == std::vector<double>{3.0, 1.0});
  auto diag = oracle::eig_reference({{1.0, 0.0, 0.0}, {0.0, 5.0, 0.0}, {0.0, 0.0, -2.0}});
  CHECK(std::abs(diag[0] - 5.0) < 1e-12);
  CHECK(std::abs(diag[1] - 1.0) < 1e-12);
  CHECK(std::abs(diag[2] + 2.0) < 1e-12);
  auto diag6 = oracle::eig_reference({{6, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 0}});
  CHECK(std::abs(diag6[0] - 6.0) < 1e-10);
  CHECK(std::abs(diag6[1] - 3.0) < 1e-10);
  CHECK(std::abs(diag6[2] - 0.0) < 1e-10);
  CHECK(std::abs(diag6[3] + 1.0) < 1e-10);
  CHECK(oracle::eig_reference({{cx(0.0), cx(0.0, 1.0)}, {cx(0.0, -1.0), cx(0.0)}}) == std::vector<double>{1.0, -1.0});
}

TEST_CASE("eig_reference cross-validates the Jacobi solver") {
  std::mt19937_64 rng(21);
  for (std::size_t n : {3u, 5u, 8u, 12u}) {
    for (int t = 0; t < 3; ++t) {
      auto a = random_hermitian(n, rng);
      auto ref = oracle::eig_reference(rows_of(a));
      auto sp = eig_hermitian(a);
      const double scale = frobenius_norm(a);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ref[i] - sp.values[i]) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("perturbation probe") {
  std::mt19937_64 rng(4);
  const std::size_t n = 6;
  std::vector<oracle::Vec> columns;
  for (int j = 0; j < 5; ++j) columns.push_back(random_signal(n, rng).values);
  CMatrix a(n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t r = 0; r < n; ++r) a(r, j) = columns[j][r];
  auto sp = eig_hermitian(a * a.adjoint(), true);

  auto basis_of = [&](std::vector<std::size_t> idx) {
    std::vector<oracle::Vec> out;
    for (auto p : idx) {
      oracle::Vec v(n);
      for (std::size_t r = 0; r < n; ++r) v[r] = sp.vectors(r, p);
      out.push_back(v);
    }
    return out;
  };
  CHECK(oracle::perturbation_probe(columns, basis_of({0, 1, 2}), 100, 9) <= 1e-9);
  const double swapped = oracle::perturbation_probe(columns, basis_of({0, 1, 3}), 400, 9);
  CHECK(swapped > 0.0);
  CHECK(swapped <= sp.values[2] - sp.values[3] + 1e-9);

  std::vector<oracle::Vec> zero(3, oracle::Vec(n));
  CHECK(oracle::perturbation_probe(zero, basis_of({0, 1}), 50, 9) == 0.0);
  CHECK(oracle::perturbation_probe(columns, {}, 50, 9) == 0.0);
}
