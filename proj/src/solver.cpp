#include "crystinv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "crystinv/error.hpp"
#include "crystinv/stabilizer.hpp"

namespace crystinv {

namespace {

struct OrbitWork {
  CMatrix a;          // pre-Gramian at the representative
  Spectrum spectrum;  // of a^* a
};

struct OrbitChoice {
  CMatrix h0;     // H(omega_0)
  CMatrix basis;  // orthonormal basis of J_W(omega_0)
  std::vector<double> theta;
  Route route = Route::EckartYoung;
  OrbitDiagnostics diagnostics;
};

OrbitChoice choose_free(const OrbitWork& work, std::size_t cut, double threshold) {
  const std::size_t n = work.a.rows();
  const std::size_t total = work.spectrum.values.size();
  OrbitChoice out;
  out.h0 = CMatrix(n, cut);
  out.theta.assign(total, 0.0);
  std::vector<CVector> kept;
  for (std::size_t p = 0; p < total; ++p) {
    const double s2 = work.spectrum.values[p];
    if (!(s2 > threshold)) continue;
    out.theta[p] = 1.0 / std::sqrt(s2);
    if (p >= cut) continue;
    CVector u = multiply(work.a, work.spectrum.vectors.col(p));
    for (auto& x : u) x *= out.theta[p];
    std::copy(u.begin(), u.end(), out.h0.col(p).begin());
    kept.push_back(std::move(u));
  }
  out.basis = CMatrix::from_columns(n, kept);
  return out;
}

OrbitChoice choose_fixed(const CrystalModel& model, const OrbitRecord& orbit, const OrbitWork& work, std::size_t kappa,
                         double threshold, const Tolerances& tol, std::mt19937_64& rng) {
  const std::size_t order = model.group_size();
  const std::size_t cut = kappa * order;
  const std::size_t q = cut / orbit.stabilizer.size();
  const StabilizerRep rep = stabilizer_rep(model, orbit);
  const auto& values = work.spectrum.values;

  const CMatrix cov = work.a * work.a.adjoint();
  const Spectrum csp = eig_hermitian(cov, true);
  std::size_t positive = 0;
  while (positive < csp.values.size() && positive < cut && csp.values[positive] > threshold) ++positive;
  const CMatrix ey = leading_vectors(csp, positive);

  OrbitChoice out;
  out.theta.assign(values.size(), 0.0);
  const auto window = detect_cut_tie(values, cut, tol.tie, frobenius_norm(cov));
  out.diagnostics.tie = window.tie && values[cut - 1] > threshold;

  bool chosen = false;
  if (out.diagnostics.tie) {
    out.diagnostics.symmetrized = true;
    try {
      const CMatrix sym = projection_basis(reynolds_symmetrize(ey * ey.adjoint(), rep.matrices));
      if (capacity_feasible(sym, rep, q, rng)) {
        out.basis = sym;
        out.route = Route::Symmetrized;
        chosen = true;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankCollapse) throw;
    }
  } else if (capacity_feasible(ey, rep, q, rng)) {
    out.basis = ey;
    out.route = Route::EckartYoung;
    chosen = true;
  }
  if (!chosen) {
    out.basis = constrained_top(cov, rep, q, tol.tie, threshold, rng).basis;
    out.route = Route::Constrained;
    out.diagnostics.capacity_constrained = true;
  }
  out.h0 = covariant_parseval(out.basis, model.group(), rep, kappa, rng);
  return out;
}

}  // namespace

const char* to_string(Route route) noexcept {
  switch (route) {
    case Route::EckartYoung: return "eckart_young";
    case Route::Symmetrized: return "symmetrized";
    case Route::Constrained: return "capacity_constrained";
  }
  return "unknown";
}

bool SolveReport::any_diagnostic() const noexcept {
  return std::any_of(orbits.begin(), orbits.end(), [](const OrbitReport& o) { return o.diagnostics.any(); });
}

SolveResult solve_optimal(const CrystalModel& model, std::span<const Signal> data, std::size_t kappa,
                          const SolveOptions& options) {
  if (data.empty()) throw Error(ErrorKind::EmptyFamily, "no data signals");
  const std::size_t m = data.size();
  if (kappa < 1 || kappa > m)
    throw Error(ErrorKind::BadKappa, "kappa = " + std::to_string(kappa) + " outside [1, " + std::to_string(m) + "]");
  for (const auto& f : data)
    if (f.values.size() != model.ambient().size()) throw Error(ErrorKind::SizeMismatch, "signal length differs from N^d");

  const auto& orbits = model.orbits();
  const std::size_t order = model.group_size();
  const std::size_t cut = kappa * order;
  const auto hats = transform_family(model.ambient(), data, options.exec);
  const auto count = static_cast<std::ptrdiff_t>(orbits.size());
  const int jobs = options.exec.jobs;

  std::vector<OrbitWork> work(orbits.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (jobs > 1)
  for (std::ptrdiff_t o = 0; o < count; ++o) {
    auto& w = work[static_cast<std::size_t>(o)];
    w.a = pre_gramian(model, hats, orbits[static_cast<std::size_t>(o)].rep);
    w.spectrum = eig_hermitian(w.a.adjoint() * w.a, true);
  }
  double floor = 0.0;
  for (const auto& w : work) floor = std::max(floor, w.spectrum.values.front());
  const double threshold = options.tol.rank * floor;

  std::vector<OrbitChoice> choices(orbits.size());
  std::vector<CMatrix> fibers(model.section_size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (jobs > 1)
  for (std::ptrdiff_t o = 0; o < count; ++o) {
    const auto u = static_cast<std::size_t>(o);
    const auto& orbit = orbits[u];
    std::mt19937_64 rng(derive_seed(options.seed, u));
    choices[u] = orbit.free() ? choose_free(work[u], cut, threshold)
                              : choose_fixed(model, orbit, work[u], kappa, threshold, options.tol, rng);
    for (const auto& mem : orbit.members)
      fibers[mem.omega] = model.rho(mem.g, orbit.rep).inverse().apply_rows(choices[u].h0) *
                          lambda_rep(model.group(), mem.g, kappa).matrix();
  }

  SolveResult result;
  std::vector<FiberField> fields(kappa, FiberField{CMatrix(model.fiber_length(), model.section_size())});
  for (std::size_t w = 0; w < model.section_size(); ++w)
    for (std::size_t i = 0; i < kappa; ++i) {
      auto src = fibers[w].col(i * order);
      std::copy(src.begin(), src.end(), fields[i].fibers.col(w).begin());
    }
  for (const auto& f : fields) result.generators.signals.push_back(defiberize(model, f, options.exec));

  auto& report = result.report;
  report.m = m;
  report.kappa = kappa;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    const auto& orbit = orbits[o];
    OrbitReport rep;
    rep.rep = orbit.rep;
    for (const auto& mem : orbit.members) rep.members.push_back(mem.omega);
    rep.stabilizer_order = orbit.stabilizer.size();
    auto labeled = label_lex(work[o].spectrum, m, order);
    rep.sigma2 = labeled.spectrum.values;
    rep.labels = labeled.labels;
    rep.rank = choices[o].basis.cols();
    for (std::size_t p = cut; p < rep.sigma2.size(); ++p) rep.bound_residual += rep.sigma2[p];
    rep.achieved_residual = fiber_residual(choices[o].basis, work[o].a);
    rep.route = choices[o].route;
    rep.diagnostics = choices[o].diagnostics;
    report.spectral_bound += rep.bound_residual / static_cast<double>(rep.stabilizer_order);
    report.orbits.push_back(std::move(rep));
  }
  report.spectral_bound /= static_cast<double>(model.lattice_size());

  const auto achieved_table =
      invariant_range_function(model, std::span<const Signal>(result.generators.signals), options.tol.rank, -1.0,
                               options.exec);
  report.achieved_error = error_functional(model, achieved_table, data);

  auto& state = result.state;
  state.ready = true;
  state.m = m;
  state.kappa = kappa;
  state.eps_rank = options.tol.rank;
  state.floor = floor;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    state.eigvecs.push_back(work[o].spectrum.vectors);
    state.theta.push_back(choices[o].theta);
  }
  state.generator_fibers = std::move(fibers);
  return result;
}

CVector generator_coefficients(const CrystalModel& model, std::span<const Signal> data, const SolveState& state,
                               std::size_t i, std::size_t omega) {
  if (!state.ready) throw Error(ErrorKind::StateMissing, "generator coefficients need a completed solve");
  if (data.size() != state.m) throw Error(ErrorKind::SizeMismatch, "data differs from the solved data set");
  if (i >= state.kappa || omega >= model.section_size())
    throw Error(ErrorKind::SizeMismatch, "generator or section index out of range");

  const std::size_t order = model.group_size();
  const auto slot = model.slot(omega);
  const auto& orbit = model.orbits()[slot.orbit];
  const std::size_t g = orbit.members[slot.member].g;

  if (orbit.free()) {
    const std::size_t p = i * order + g;
    const CMatrix v = lambda_rep(model.group(), model.group().inv(g), state.m).apply_rows(state.eigvecs[slot.orbit]);
    CVector c(v.rows());
    for (std::size_t r = 0; r < v.rows(); ++r) c[r] = state.theta[slot.orbit][p] * v(r, p);
    return c;
  }
  const auto hats = transform_family(model.ambient(), data);
  const CMatrix a = pre_gramian(model, hats, omega);
  const CMatrix s = pinv_sqrt(a.adjoint() * a, state.eps_rank, state.floor).matrix;
  return multiply(s * s, multiply_adjoint(a, state.generator_fibers[omega].col(i * order)));
}

RangeFunctionTable solution_range(const CrystalModel& model, const SolveState& state, double eps_rank) {
  if (!state.ready) throw Error(ErrorKind::StateMissing, "solution range needs a completed solve");
  RangeFunctionTable table;
  for (std::size_t w = 0; w < model.section_size(); ++w)
    table.bases.push_back(orthonormal_span(state.generator_fibers[w], eps_rank, 1.0));
  return table;
}

}  // namespace crystinv
