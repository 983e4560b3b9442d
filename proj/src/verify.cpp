#include "crystinv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crystinv/error.hpp"
#include "crystinv/range.hpp"

namespace crystinv {

namespace {

constexpr double kFault = 1e-6;

double safe(double scale) { return scale > 0.0 ? scale : 1.0; }

void record(IdentityCheck& check, double value, const std::string& where) {
  if (value > check.worst) {
    check.worst = value;
    check.where = where;
  }
}

std::string at(std::size_t g, std::size_t omega) {
  return "g=" + std::to_string(g) + " omega=" + std::to_string(omega);
}

}  // namespace

std::optional<Fault> parse_fault(std::string_view name) {
  for (Fault f : {Fault::None, Fault::Isometry, Fault::Intertwining, Fault::Covariance, Fault::Parseval})
    if (name == to_string(f)) return f;
  return std::nullopt;
}

const char* to_string(Fault fault) noexcept {
  switch (fault) {
    case Fault::None: return "none";
    case Fault::Isometry: return "isometry";
    case Fault::Intertwining: return "intertwining";
    case Fault::Covariance: return "covariance";
    case Fault::Parseval: return "parseval";
  }
  return "unknown";
}

bool VerifyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed(); });
}

const IdentityCheck& VerifyReport::worst_offender() const {
  if (checks.empty()) throw Error(ErrorKind::StateMissing, "no identities were checked");
  return *std::max_element(checks.begin(), checks.end(), [](const IdentityCheck& a, const IdentityCheck& b) {
    return a.worst / a.tol < b.worst / b.tol;
  });
}

VerifyReport verify_identities(const CrystalModel& model, std::span<const Signal> data, const Tolerances& tol,
                               Fault fault, Exec exec) {
  if (data.empty()) throw Error(ErrorKind::EmptyFamily, "nothing to verify");
  const auto& amb = model.ambient();
  const auto& grp = model.group();
  const auto hats = transform_family(amb, data, exec);
  const std::size_t n = data.size();
  VerifyReport report;

  IdentityCheck iso{"isometry", 0.0, tol.verify, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double norm = norm2(data[i].values);
    double fib = std::sqrt(weighted_norm_squared(model, fiberize(model, hats[i])));
    if (fault == Fault::Isometry) fib *= 1.0 + kFault;
    record(iso, std::abs(fib - norm) / safe(norm), "signal " + std::to_string(i));
  }
  report.checks.push_back(iso);

  IdentityCheck inter{"intertwining", 0.0, tol.verify, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double norm = safe(norm2(data[i].values));
    const FiberField base = fiberize(model, hats[i]);
    for (std::size_t g = 0; g < grp.size(); ++g) {
      const Signal rotated = rotate(grp, g, data[i]);
      for (std::size_t k : model.lattice().elements) {
        FiberField moved = fiberize(model, translate(amb, k, rotated), exec);
        if (fault == Fault::Intertwining) moved.fibers(0, 0) += kFault * norm;
        for (std::size_t w = 0; w < model.section_size(); ++w) {
          const cplx phase = std::conj(amb.pairing(model.section().reps[w], k));
          const CVector expect = model.rho(g, w).apply(base.fibers.col(model.act(g, w)));
          double diff = 0.0;
          for (std::size_t p = 0; p < expect.size(); ++p)
            diff = std::max(diff, std::abs(moved.fibers(p, w) - phase * expect[p]));
          record(inter, diff / norm, "signal " + std::to_string(i) + " k=" + std::to_string(k) + " " + at(g, w));
        }
      }
    }
  }
  report.checks.push_back(inter);

  const auto table = invariant_range_function(model, std::span<const FourierCoeffs>(hats), tol.rank, -1.0, exec);
  const auto cov = check_gamma_covariance(model, table, tol.verify);
  report.checks.push_back({"range_covariance", cov.worst, tol.verify, at(cov.g, cov.omega)});

  IdentityCheck pre{"pregramian_covariance", 0.0, tol.verify, {}};
  IdentityCheck gram{"gramian_covariance", 0.0, tol.verify, {}};
  const auto field = pre_gramian_field(model, hats, exec);
  double scale = 0.0;
  for (const auto& j : field) scale = std::max(scale, frobenius_norm(j));
  scale = safe(scale);
  for (std::size_t g = 0; g < grp.size(); ++g) {
    const CMatrix lam = lambda_rep(grp, g, n).matrix();
    const CMatrix lam_inv = lambda_rep(grp, grp.inv(g), n).matrix();
    for (std::size_t w = 0; w < model.section_size(); ++w) {
      const std::size_t w2 = model.act(g, w);
      CMatrix lhs = field[w2];
      if (fault == Fault::Covariance && g + 1 == grp.size() && w == 0) lhs(0, 0) += kFault * scale;
      const CMatrix rhs = model.rho(g, w).inverse().apply_rows(field[w]) * lam;
      record(pre, frobenius_distance(lhs, rhs) / scale, at(g, w));
      const CMatrix glhs = lhs.adjoint() * lhs;
      const CMatrix grhs = lam_inv * (field[w].adjoint() * field[w]) * lam;
      record(gram, frobenius_distance(glhs, grhs) / (scale * scale), at(g, w));
    }
  }
  report.checks.push_back(pre);
  report.checks.push_back(gram);

  const auto gamma = check_gamma_table(model, gamma_range_function(model, data, tol.rank), tol.verify);
  report.checks.push_back({"gamma_table", gamma.worst, tol.verify,
                           "orbit=" + std::to_string(gamma.omega) + " u=" + std::to_string(gamma.g)});

  IdentityCheck pars{"parseval", 0.0, tol.verify, {}};
  const auto psi = parsevalize(model, data, tol.rank, -1.0, exec);
  const auto frame = frame_operator_field(model, psi);
  for (std::size_t w = 0; w < model.section_size(); ++w) {
    CMatrix s = frame[w];
    if (fault == Fault::Parseval && w == 0) s(0, 0) += kFault;
    record(pars, frobenius_distance(s, table.projector(w)), "omega=" + std::to_string(w));
  }
  report.checks.push_back(pars);

  IdentityCheck routes{"error_routes", 0.0, tol.verify, {}};
  const auto first = invariant_range_function(model, data.first(1), tol.rank, -1.0, exec);
  double energy = 0.0;
  for (const auto& f : data) energy += std::pow(norm2(f.values), 2);
  record(routes,
         std::abs(error_functional(model, first, data) - error_functional_orbits(model, first, data)) / safe(energy),
         "generator 0");
  report.checks.push_back(routes);

  return report;
}

}  // namespace crystinv
