#include "crystinv/range.hpp"

#include <algorithm>
#include <cmath>

#include "crystinv/error.hpp"
#include "crystinv/spectra.hpp"

namespace crystinv {

namespace {

CMatrix conjugate_by(const Permutation& p, const CMatrix& m) {
  const CMatrix pm = p.matrix();
  return pm * m * pm.adjoint();
}

void require_table(const CrystalModel& model, const RangeFunctionTable& table) {
  if (table.bases.size() != model.section_size())
    throw Error(ErrorKind::InconsistentSpec, "range table does not cover the section");
  for (const auto& b : table.bases)
    if (b.rows() != model.fiber_length())
      throw Error(ErrorKind::InconsistentSpec, "range table basis has the wrong fiber length");
}

void require_signals(const CrystalModel& model, std::span<const Signal> data) {
  for (const auto& f : data)
    if (f.values.size() != model.ambient().size())
      throw Error(ErrorKind::InconsistentSpec, "signal length differs from N^d");
}

}  // namespace

std::size_t RangeFunctionTable::total_dim() const noexcept {
  std::size_t s = 0;
  for (const auto& b : bases) s += b.cols();
  return s;
}

CMatrix RangeFunctionTable::projector(std::size_t omega) const {
  const auto& b = bases[omega];
  return b * b.adjoint();
}

CMatrix orthonormal_span(const CMatrix& columns, double eps_rank, double floor) {
  const std::size_t n = columns.rows();
  if (columns.cols() == 0) return CMatrix(n, 0);
  const Spectrum sp = eig_hermitian(columns * columns.adjoint(), true);
  const double threshold = eps_rank * std::max(sp.values.front(), floor);
  std::size_t keep = 0;
  while (keep < n && sp.values[keep] > threshold) ++keep;
  return leading_vectors(sp, keep);
}

double global_fiber_scale(const CrystalModel& model, std::span<const FourierCoeffs> hats) {
  double scale = 0.0;
  for (std::size_t w = 0; w < model.section_size(); ++w) {
    const CMatrix j = pre_gramian(model, hats, w);
    const Spectrum sp = eig_hermitian(j * j.adjoint(), true);
    scale = std::max(scale, sp.values.front());
  }
  return scale;
}

RangeFunctionTable range_function(const CrystalModel& model, std::span<const Signal> family, double eps_rank,
                                  Exec exec) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "range function of an empty family");
  const auto hats = transform_family(model.ambient(), family, exec);
  std::vector<CMatrix> columns(model.section_size());
  double floor = 0.0;
  for (std::size_t w = 0; w < model.section_size(); ++w) {
    columns[w] = synthesis_at(model, hats, w);
    floor = std::max(floor, eig_hermitian(columns[w] * columns[w].adjoint(), true).values.front());
  }
  RangeFunctionTable table;
  table.bases.resize(model.section_size());
  const auto count = static_cast<std::ptrdiff_t>(model.section_size());
#pragma omp parallel for schedule(dynamic) num_threads(exec.jobs) if (exec.jobs > 1)
  for (std::ptrdiff_t w = 0; w < count; ++w) {
    const auto u = static_cast<std::size_t>(w);
    table.bases[u] = orthonormal_span(columns[u], eps_rank, floor);
  }
  return table;
}

RangeFunctionTable invariant_range_function(const CrystalModel& model, std::span<const FourierCoeffs> hats,
                                            double eps_rank, double floor, Exec exec) {
  if (hats.empty()) throw Error(ErrorKind::EmptyFamily, "range function of an empty family");
  if (floor < 0.0) floor = global_fiber_scale(model, hats);
  RangeFunctionTable table;
  table.bases.resize(model.section_size());
  const auto count = static_cast<std::ptrdiff_t>(model.section_size());
#pragma omp parallel for schedule(dynamic) num_threads(exec.jobs) if (exec.jobs > 1)
  for (std::ptrdiff_t w = 0; w < count; ++w) {
    const auto u = static_cast<std::size_t>(w);
    table.bases[u] = orthonormal_span(pre_gramian(model, hats, u), eps_rank, floor);
  }
  return table;
}

RangeFunctionTable invariant_range_function(const CrystalModel& model, std::span<const Signal> family,
                                            double eps_rank, double floor, Exec exec) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "range function of an empty family");
  const auto hats = transform_family(model.ambient(), family, exec);
  return invariant_range_function(model, hats, eps_rank, floor, exec);
}

CovarianceReport check_gamma_covariance(const CrystalModel& model, const RangeFunctionTable& table, double tol) {
  require_table(model, table);
  CovarianceReport rep;
  std::vector<CMatrix> proj(model.section_size());
  for (std::size_t w = 0; w < model.section_size(); ++w) proj[w] = table.projector(w);
  for (std::size_t g = 0; g < model.group_size(); ++g)
    for (std::size_t w = 0; w < model.section_size(); ++w) {
      const CMatrix moved = conjugate_by(model.rho(g, w).inverse(), proj[w]);
      const double d = frobenius_distance(proj[model.act(g, w)], moved);
      if (d > rep.worst) rep = CovarianceReport{d, g, w, true};
    }
  rep.passed = rep.worst <= tol;
  return rep;
}

GammaRangeTable gamma_range_function(const CrystalModel& model, std::span<const Signal> family, double eps_rank) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "range function of an empty family");
  const auto hats = transform_family(model.ambient(), family);
  const double floor = global_fiber_scale(model, hats);
  GammaRangeTable table;
  for (const auto& orbit : model.orbits()) {
    std::vector<CMatrix> per_g;
    const std::size_t rep = model.section().reps[orbit.rep];
    for (std::size_t g = 0; g < model.group_size(); ++g)
      per_g.push_back(
          orthonormal_span(pre_gramian_at_frequency(model, hats, model.group().act_dual(g, rep)), eps_rank, floor));
    table.bases.push_back(std::move(per_g));
  }
  return table;
}

CovarianceReport check_gamma_table(const CrystalModel& model, const GammaRangeTable& table, double tol) {
  CovarianceReport rep;
  const auto& grp = model.group();
  for (std::size_t o = 0; o < table.bases.size(); ++o)
    for (std::size_t g = 0; g < grp.size(); ++g) {
      const CMatrix p = table.bases[o][g] * table.bases[o][g].adjoint();
      for (std::size_t u = 0; u < grp.size(); ++u) {
        const auto& target = table.bases[o][grp.mul(g, u)];
        const double d = frobenius_distance(conjugate_by(model.r(grp.inv(u)), p), target * target.adjoint());
        if (d > rep.worst) rep = CovarianceReport{d, u, o, true};
      }
    }
  rep.passed = rep.worst <= tol;
  return rep;
}

std::vector<Signal> parsevalize(const CrystalModel& model, std::span<const Signal> family, double eps_rank,
                                double floor, Exec exec) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "parsevalize of an empty family");
  require_signals(model, family);
  const auto hats = transform_family(model.ambient(), family, exec);
  if (floor < 0.0) floor = global_fiber_scale(model, hats);
  const std::size_t n = family.size();
  const std::size_t order = model.group_size();
  std::vector<FiberField> fields(n, FiberField{CMatrix(model.fiber_length(), model.section_size())});
  const auto count = static_cast<std::ptrdiff_t>(model.section_size());
#pragma omp parallel for schedule(dynamic) num_threads(exec.jobs) if (exec.jobs > 1)
  for (std::ptrdiff_t w = 0; w < count; ++w) {
    const auto u = static_cast<std::size_t>(w);
    const CMatrix j = pre_gramian(model, hats, u);
    const CMatrix q = j * pinv_sqrt(j.adjoint() * j, eps_rank, floor).matrix;
    for (std::size_t i = 0; i < n; ++i) {
      auto src = q.col(i * order);
      std::copy(src.begin(), src.end(), fields[i].fibers.col(u).begin());
    }
  }
  std::vector<Signal> out;
  out.reserve(n);
  for (const auto& f : fields) out.push_back(defiberize(model, f, exec));
  return out;
}

std::vector<Signal> orthogonal_decompose(const CrystalModel& model, std::span<const Signal> family, double eps_rank,
                                         Exec exec) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "decomposition of an empty family");
  require_signals(model, family);
  const auto hats = transform_family(model.ambient(), family, exec);
  const double floor = global_fiber_scale(model, hats);

  std::vector<Signal> out;
  for (std::size_t j = 0; j < family.size(); ++j) {
    Signal residual = family[j];
    if (j > 0) {
      const auto prev = invariant_range_function(model, std::span<const FourierCoeffs>(hats).subspan(0, j), eps_rank, floor, exec);
      FiberField field{CMatrix(model.fiber_length(), model.section_size())};
      for (std::size_t w = 0; w < model.section_size(); ++w) {
        auto fib = fiber_at(model, hats[j], model.section().reps[w]);
        const auto& b = prev.bases[w];
        const CVector coeff = multiply_adjoint(b, fib);
        const CVector inside = multiply(b, coeff);
        for (std::size_t p = 0; p < fib.size(); ++p) field.fibers(p, w) = fib[p] - inside[p];
      }
      residual = defiberize(model, field, exec);
    }
    const Signal single[] = {residual};
    if (invariant_range_function(model, single, eps_rank, floor, exec).total_dim() == 0) continue;
    out.push_back(parsevalize(model, single, eps_rank, floor, exec).front());
  }
  return out;
}

double orthogonality_residual(const RangeFunctionTable& a, const RangeFunctionTable& b) {
  if (a.bases.size() != b.bases.size()) throw Error(ErrorKind::SizeMismatch, "range tables over different sections");
  double worst = 0.0;
  for (std::size_t w = 0; w < a.bases.size(); ++w) {
    if (a.dim(w) == 0 || b.dim(w) == 0) continue;
    worst = std::max(worst, frobenius_norm(a.bases[w].adjoint() * b.bases[w]));
  }
  return worst;
}

double fiber_residual(const CMatrix& basis, const CMatrix& columns) {
  if (basis.rows() != columns.rows()) throw Error(ErrorKind::SizeMismatch, "basis and columns differ in length");
  if (basis.cols() == 0) {
    const double n = frobenius_norm(columns);
    return n * n;
  }
  const CMatrix r = columns - basis * (basis.adjoint() * columns);
  const double n = frobenius_norm(r);
  return n * n;
}

double error_functional(const CrystalModel& model, const RangeFunctionTable& table, std::span<const Signal> data) {
  require_table(model, table);
  require_signals(model, data);
  if (data.empty()) return 0.0;
  const auto hats = transform_family(model.ambient(), data);
  double total = 0.0;
  for (std::size_t w = 0; w < model.section_size(); ++w)
    total += fiber_residual(table.bases[w], synthesis_at(model, hats, w));
  return total / static_cast<double>(model.lattice_size());
}

double error_functional_orbits(const CrystalModel& model, const RangeFunctionTable& table,
                               std::span<const Signal> data) {
  require_table(model, table);
  require_signals(model, data);
  if (data.empty()) return 0.0;
  const auto hats = transform_family(model.ambient(), data);
  double total = 0.0;
  for (const auto& orbit : model.orbits()) {
    const double d = fiber_residual(table.bases[orbit.rep], pre_gramian(model, hats, orbit.rep));
    total += d / static_cast<double>(orbit.stabilizer.size());
  }
  return total / static_cast<double>(model.lattice_size());
}

std::vector<CMatrix> frame_operator_field(const CrystalModel& model, std::span<const Signal> generators) {
  std::vector<CMatrix> out(model.section_size());
  if (generators.empty()) {
    for (auto& s : out) s = CMatrix(model.fiber_length(), model.fiber_length());
    return out;
  }
  const auto hats = transform_family(model.ambient(), generators);
  for (std::size_t w = 0; w < model.section_size(); ++w) {
    const CMatrix q = pre_gramian(model, hats, w);
    out[w] = q * q.adjoint();
  }
  return out;
}

Signal project(const CrystalModel& model, const Signal& f, std::span<const Signal> generators) {
  require_signals(model, generators);
  const auto frame = frame_operator_field(model, generators);
  for (std::size_t w = 0; w < frame.size(); ++w) {
    const double scale = std::max(1.0, frobenius_norm(frame[w]));
    if (hermitian_defect(frame[w]) > 1e-8 * scale || frobenius_distance(frame[w] * frame[w], frame[w]) > 1e-8 * scale)
      throw Error(ErrorKind::NotParseval, "orbit frame operator is not a projection at section point " +
                                              std::to_string(w));
  }
  FiberField field = fiberize(model, f);
  for (std::size_t w = 0; w < model.section_size(); ++w) {
    const CVector moved = multiply(frame[w], field.fibers.col(w));
    std::copy(moved.begin(), moved.end(), field.fibers.col(w).begin());
  }
  return defiberize(model, field);
}

}  // namespace crystinv
