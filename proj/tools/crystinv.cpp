// Command-line front end: solve, verify, spectrum, decompose.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "crystinv/error.hpp"
#include "crystinv/io.hpp"
#include "crystinv/range.hpp"
#include "crystinv/solver.hpp"
#include "crystinv/verify.hpp"

namespace fs = std::filesystem;
using namespace crystinv;

namespace {

struct Common {
  std::string config;
  std::string data;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<double> eps_rank;
  std::optional<double> tie_tol;
  std::optional<double> verify_tol;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "problem configuration (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--data", c.data, "dataset (JSON or CSV)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 1024));
  cmd->add_option("--seed", c.seed, "root seed, overrides the config");
  cmd->add_option("--eps-rank", c.eps_rank, "relative rank cutoff")->check(CLI::PositiveNumber);
  cmd->add_option("--tie-tol", c.tie_tol, "relative eigenvalue tie tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--verify-tol", c.verify_tol, "identity check tolerance")->check(CLI::PositiveNumber);
}

struct Loaded {
  ProblemConfig config;
  CrystalModel model;
  Dataset data;
};

Loaded load(const Common& c) {
  ProblemConfig cfg = parse_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (c.eps_rank) cfg.tolerances.rank = *c.eps_rank;
  if (c.tie_tol) cfg.tolerances.tie = *c.tie_tol;
  if (c.verify_tol) cfg.tolerances.verify = *c.verify_tol;
  CrystalModel model = build_model(cfg);
  Dataset data = load_dataset(c.data);
  check_dataset(cfg, data);
  return {std::move(cfg), std::move(model), std::move(data)};
}

int run_solve(const Common& c, std::optional<std::size_t> kappa, const fs::path& out) {
  Loaded in = load(c);
  if (kappa) in.config.kappa = *kappa;
  SolveOptions opts;
  opts.tol = in.config.tolerances;
  opts.seed = in.config.seed;
  opts.exec.jobs = c.jobs;
  const auto res = solve_optimal(in.model, in.data.signals, in.config.kappa, opts);
  write_file(out / "generators.json", dataset_to_json(in.config.group, res.generators.signals));
  write_file(out / "report.json", report_to_json(in.config, res.report));
  write_file(out / "spectrum.csv", spectrum_csv(in.model, in.data.signals));
  std::printf("kappa=%zu achieved_error=%.17g spectral_bound=%.17g diagnostics=%s\n", in.config.kappa,
              res.report.achieved_error, res.report.spectral_bound, res.report.any_diagnostic() ? "yes" : "no");
  return 0;
}

int run_verify(const Common& c, const std::string& fault_name, const std::string& out) {
  const auto fault = parse_fault(fault_name);
  if (!fault) {
    std::fprintf(stderr, "unknown fault '%s'\n", fault_name.c_str());
    return 1;
  }
  Loaded in = load(c);
  const auto rep = verify_identities(in.model, in.data.signals, in.config.tolerances, *fault, Exec{c.jobs});
  for (const auto& chk : rep.checks)
    std::printf("%-22s %s worst=%.3e tol=%.1e\n", chk.name.c_str(), chk.passed() ? "ok  " : "FAIL", chk.worst,
                chk.tol);
  if (!out.empty()) write_file(out, verify_to_json(rep));
  if (!rep.passed()) {
    const auto& w = rep.worst_offender();
    std::fprintf(stderr, "identity violated: %s worst=%.3e at %s\n", w.name.c_str(), w.worst, w.where.c_str());
    return 3;
  }
  return 0;
}

int run_spectrum(const Common& c, const fs::path& out) {
  Loaded in = load(c);
  write_file(out, spectrum_csv(in.model, in.data.signals));
  return 0;
}

int run_decompose(const Common& c, const fs::path& out) {
  Loaded in = load(c);
  const auto parts = orthogonal_decompose(in.model, in.data.signals, in.config.tolerances.rank, Exec{c.jobs});
  write_file(out / "generators.json", dataset_to_json(in.config.group, parts));
  write_file(out / "orthogonality.json", orthogonality_to_json(in.model, parts, in.config.tolerances.rank));
  std::printf("length=%zu\n", parts.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal Gamma-invariant subspaces for signals on (Z_N)^d"};
  app.require_subcommand(1);

  Common solve_opts, verify_opts, spectrum_opts, decompose_opts;
  std::optional<std::size_t> kappa;
  std::string solve_out, spectrum_out, decompose_out, verify_out, fault = "none";

  auto* solve = app.add_subcommand("solve", "optimal subspace and Parseval generators");
  add_common(solve, solve_opts);
  solve->add_option("--kappa", kappa, "number of generators, overrides the config")->check(CLI::PositiveNumber);
  solve->add_option("--out", solve_out, "output directory")->required();

  auto* verify = app.add_subcommand("verify", "identity suite on the given data");
  add_common(verify, verify_opts);
  verify->add_option("--inject-fault", fault, "corrupt one identity: isometry|intertwining|covariance|parseval");
  verify->add_option("--out", verify_out, "optional JSON report");

  auto* spectrum = app.add_subcommand("spectrum", "per-orbit Gramian eigenvalues as CSV");
  add_common(spectrum, spectrum_opts);
  spectrum->add_option("--out", spectrum_out, "CSV file")->required();

  auto* decompose = app.add_subcommand("decompose", "orthogonal single-generator decomposition");
  add_common(decompose, decompose_opts);
  decompose->add_option("--out", decompose_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*solve) return run_solve(solve_opts, kappa, solve_out);
    if (*verify) return run_verify(verify_opts, fault, verify_out);
    if (*spectrum) return run_spectrum(spectrum_opts, spectrum_out);
    if (*decompose) return run_decompose(decompose_opts, decompose_out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 1;
}
