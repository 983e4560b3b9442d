#pragma once

// Problem configuration, datasets and result files. Everything is JSON except
// the optional CSV dataset and the spectrum table. Complex numbers are
// [re, im] pairs; signals are row-major over coordinates.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crystinv/error.hpp"
#include "crystinv/fiber.hpp"
#include "crystinv/options.hpp"
#include "crystinv/solver.hpp"
#include "crystinv/verify.hpp"

namespace crystinv {

struct ProblemConfig {
  GroupSpec group;
  std::vector<std::vector<int>> lattice;      // generator columns, each of length d
  std::vector<std::vector<int>> point_group;  // row-major d x d matrices
  std::size_t kappa = 1;
  Tolerances tolerances;
  std::uint64_t seed = 42;
};

/// Strict: unknown keys, wrong types and out-of-range values raise
/// ValidationError naming the JSON path; malformed text raises ParseError with
/// line and column.
ProblemConfig parse_config_text(std::string_view text, const std::string& origin = "<config>");
ProblemConfig parse_config(const std::filesystem::path& path);

/// Geometry checks of the lattice and point group surface as their own error kinds.
CrystalModel build_model(const ProblemConfig& config);

std::string config_to_json(const ProblemConfig& config);

struct Dataset {
  GroupSpec group;
  std::vector<Signal> signals;
};

/// JSON {"N", "d", "signals"} or CSV: a header line "N,d,m", one line with
/// those values, then m lines of N^d interleaved re,im pairs. The format is
/// picked by extension (.csv) or, failing that, by the first character.
Dataset parse_dataset_text(std::string_view text, const std::string& origin = "<data>");
Dataset load_dataset(const std::filesystem::path& path);

/// Dataset grid must match the config grid.
void check_dataset(const ProblemConfig& config, const Dataset& data);

std::string dataset_to_json(const GroupSpec& group, std::span<const Signal> signals);

std::string report_to_json(const ProblemConfig& config, const SolveReport& report);

/// orbit,rep,i,g,sigma2 rows in orbit order, then spectrum position.
std::string spectrum_csv(const CrystalModel& model, std::span<const Signal> data);

std::string orthogonality_to_json(const CrystalModel& model, std::span<const Signal> parts, double eps_rank);

std::string verify_to_json(const VerifyReport& report);

/// Writes text exactly as given; parent directories are created.
void write_file(const std::filesystem::path& path, const std::string& text);

/// 1 usage, 2 validation, 3 numerical failure.
int exit_code(ErrorKind kind) noexcept;

}  // namespace crystinv
