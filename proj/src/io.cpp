#include "crystinv/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "crystinv/error.hpp"
#include "crystinv/range.hpp"
#include "crystinv/spectra.hpp"

namespace crystinv {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& origin, const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ValidationError, origin + ": " + where + ": " + what);
}

json parse_json(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError,
                origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& origin,
               const std::string& where) {
  if (!obj.is_object()) invalid(origin, where, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items())
    if (!ok.count(key)) invalid(origin, where + "/" + key, "unknown key");
}

const json& need(const json& obj, const char* key, const std::string& origin, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) invalid(origin, where + "/" + key, "missing");
  return *it;
}

long long as_int(const json& v, const std::string& origin, const std::string& where) {
  if (!v.is_number_integer()) invalid(origin, where, "expected an integer");
  return v.get<long long>();
}

double as_positive(const json& v, const std::string& origin, const std::string& where) {
  if (!v.is_number()) invalid(origin, where, "expected a number");
  const double x = v.get<double>();
  if (!(x > 0.0) || !std::isfinite(x)) invalid(origin, where, "must be a positive finite number");
  return x;
}

std::vector<int> int_list(const json& v, std::size_t len, const std::string& origin, const std::string& where) {
  if (!v.is_array() || v.size() != len) invalid(origin, where, "expected a list of " + std::to_string(len) + " integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < len; ++i) {
    const long long x = as_int(v[i], origin, where + "/" + std::to_string(i));
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
      invalid(origin, where + "/" + std::to_string(i), "out of range");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

CVector complex_list(const json& v, std::size_t len, const std::string& origin, const std::string& where) {
  if (!v.is_array() || v.size() != len)
    invalid(origin, where, "expected " + std::to_string(len) + " complex values");
  CVector out(len);
  for (std::size_t i = 0; i < len; ++i) {
    const auto& z = v[i];
    const std::string at = where + "/" + std::to_string(i);
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      invalid(origin, at, "expected [re, im]");
    out[i] = cplx(z[0].get<double>(), z[1].get<double>());
    if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag())) invalid(origin, at, "not finite");
  }
  return out;
}

json complex_json(std::span<const cplx> values) {
  json arr = json::array();
  for (auto z : values) arr.push_back({z.real(), z.imag()});
  return arr;
}

GroupSpec parse_grid(const json& obj, const std::string& origin, const std::string& where) {
  const long long n = as_int(need(obj, "N", origin, where), origin, where + "/N");
  const long long d = as_int(need(obj, "d", origin, where), origin, where + "/d");
  if (n < 1 || n > 1 << 20) invalid(origin, where + "/N", "must be in [1, 2^20]");
  if (d < 1 || d > 8) invalid(origin, where + "/d", "must be in [1, 8]");
  double size = 1.0;
  for (long long j = 0; j < d; ++j) size *= static_cast<double>(n);
  if (size > 1 << 24) invalid(origin, where, "N^d exceeds 2^24");
  return {static_cast<int>(n), static_cast<int>(d)};
}

std::size_t grid_size(const GroupSpec& g) {
  std::size_t s = 1;
  for (int j = 0; j < g.dimension; ++j) s *= static_cast<std::size_t>(g.modulus);
  return s;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ValidationError, path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fmt_double(double x) {
  std::ostringstream ss;
  ss << std::setprecision(17) << x;
  return ss.str();
}

Dataset parse_csv(std::string_view text, const std::string& origin) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur += c;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  auto fields = [](const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    return out;
  };
  auto where = [&](std::size_t line) { return origin + ":" + std::to_string(line + 1); };
  if (lines.size() < 2 || fields(lines[0]) != std::vector<std::string>{"N", "d", "m"})
    throw Error(ErrorKind::ParseError, where(0) + ": expected header N,d,m");
  auto to_long = [&](const std::string& s, std::size_t line) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw Error(ErrorKind::ParseError, where(line) + ": bad integer '" + s + "'");
    return v;
  };
  auto to_double = [&](const std::string& s, std::size_t line) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(v))
      throw Error(ErrorKind::ParseError, where(line) + ": bad number '" + s + "'");
    return v;
  };
  const auto head = fields(lines[1]);
  if (head.size() != 3) throw Error(ErrorKind::ParseError, where(1) + ": expected three values");
  json grid{{"N", to_long(head[0], 1)}, {"d", to_long(head[1], 1)}};
  Dataset ds;
  ds.group = parse_grid(grid, origin, "line 2");
  const long long m = to_long(head[2], 1);
  if (m < 1) invalid(origin, "line 2", "m must be at least 1");
  if (lines.size() != static_cast<std::size_t>(m) + 2)
    throw Error(ErrorKind::ParseError, origin + ": expected " + std::to_string(m) + " signal lines, found " +
                                           std::to_string(lines.size() - 2));
  const std::size_t size = grid_size(ds.group);
  for (std::size_t line = 2; line < lines.size(); ++line) {
    const auto vals = fields(lines[line]);
    if (vals.size() != 2 * size)
      throw Error(ErrorKind::ParseError, where(line) + ": expected " + std::to_string(2 * size) + " numbers");
    Signal s{CVector(size)};
    for (std::size_t x = 0; x < size; ++x) s.values[x] = cplx(to_double(vals[2 * x], line), to_double(vals[2 * x + 1], line));
    ds.signals.push_back(std::move(s));
  }
  return ds;
}

}  // namespace

ProblemConfig parse_config_text(std::string_view text, const std::string& origin) {
  const json root = parse_json(text, origin);
  only_keys(root, {"group", "lattice", "point_group", "kappa", "tolerances", "seed"}, origin, "");
  ProblemConfig cfg;
  const json& grp = need(root, "group", origin, "");
  only_keys(grp, {"N", "d"}, origin, "/group");
  cfg.group = parse_grid(grp, origin, "/group");
  const auto d = static_cast<std::size_t>(cfg.group.dimension);

  const json& lat = need(root, "lattice", origin, "");
  if (!lat.is_array() || lat.empty()) invalid(origin, "/lattice", "expected a nonempty list of generator columns");
  for (std::size_t i = 0; i < lat.size(); ++i) cfg.lattice.push_back(int_list(lat[i], d, origin, "/lattice/" + std::to_string(i)));

  const json& pg = need(root, "point_group", origin, "");
  if (!pg.is_array() || pg.empty()) invalid(origin, "/point_group", "expected a nonempty list of matrices");
  for (std::size_t i = 0; i < pg.size(); ++i) {
    const std::string at = "/point_group/" + std::to_string(i);
    if (!pg[i].is_array() || pg[i].size() != d) invalid(origin, at, "expected " + std::to_string(d) + " rows");
    std::vector<int> flat;
    for (std::size_t r = 0; r < d; ++r) {
      auto row = int_list(pg[i][r], d, origin, at + "/" + std::to_string(r));
      flat.insert(flat.end(), row.begin(), row.end());
    }
    cfg.point_group.push_back(std::move(flat));
  }

  if (auto it = root.find("kappa"); it != root.end()) {
    const long long k = as_int(*it, origin, "/kappa");
    if (k < 1) invalid(origin, "/kappa", "must be at least 1");
    cfg.kappa = static_cast<std::size_t>(k);
  }
  if (auto it = root.find("tolerances"); it != root.end()) {
    only_keys(*it, {"rank", "tie", "verify"}, origin, "/tolerances");
    if (auto t = it->find("rank"); t != it->end()) cfg.tolerances.rank = as_positive(*t, origin, "/tolerances/rank");
    if (auto t = it->find("tie"); t != it->end()) cfg.tolerances.tie = as_positive(*t, origin, "/tolerances/tie");
    if (auto t = it->find("verify"); t != it->end())
      cfg.tolerances.verify = as_positive(*t, origin, "/tolerances/verify");
  }
  if (auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_unsigned()) invalid(origin, "/seed", "expected a nonnegative integer");
    cfg.seed = it->get<std::uint64_t>();
  }
  return cfg;
}

ProblemConfig parse_config(const std::filesystem::path& path) { return parse_config_text(read_text(path), path.string()); }

CrystalModel build_model(const ProblemConfig& config) {
  return CrystalModel(config.group, config.lattice, config.point_group);
}

std::string config_to_json(const ProblemConfig& config) {
  const auto d = static_cast<std::size_t>(config.group.dimension);
  json pg = json::array();
  for (const auto& m : config.point_group) {
    json rows = json::array();
    for (std::size_t r = 0; r < d; ++r) rows.push_back(std::vector<int>(m.begin() + static_cast<long>(r * d),
                                                                        m.begin() + static_cast<long>((r + 1) * d)));
    pg.push_back(rows);
  }
  json j{{"group", {{"N", config.group.modulus}, {"d", config.group.dimension}}},
         {"lattice", config.lattice},
         {"point_group", pg},
         {"kappa", config.kappa},
         {"tolerances",
          {{"rank", config.tolerances.rank}, {"tie", config.tolerances.tie}, {"verify", config.tolerances.verify}}},
         {"seed", config.seed}};
  return dump(j);
}

Dataset parse_dataset_text(std::string_view text, const std::string& origin) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  const bool csv = origin.size() >= 4 && origin.compare(origin.size() - 4, 4, ".csv") == 0;
  if (csv || (first != std::string_view::npos && text[first] == 'N')) return parse_csv(text, origin);

  const json root = parse_json(text, origin);
  only_keys(root, {"N", "d", "signals"}, origin, "");
  Dataset ds;
  ds.group = parse_grid(root, origin, "");
  const json& sig = need(root, "signals", origin, "");
  if (!sig.is_array() || sig.empty()) invalid(origin, "/signals", "expected a nonempty list of signals");
  const std::size_t size = grid_size(ds.group);
  for (std::size_t i = 0; i < sig.size(); ++i)
    ds.signals.push_back(Signal{complex_list(sig[i], size, origin, "/signals/" + std::to_string(i))});
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path) { return parse_dataset_text(read_text(path), path.string()); }

void check_dataset(const ProblemConfig& config, const Dataset& data) {
  if (data.group.modulus != config.group.modulus || data.group.dimension != config.group.dimension)
    throw Error(ErrorKind::ValidationError, "dataset grid (N=" + std::to_string(data.group.modulus) +
                                                ", d=" + std::to_string(data.group.dimension) +
                                                ") differs from the config grid");
}

std::string dataset_to_json(const GroupSpec& group, std::span<const Signal> signals) {
  json arr = json::array();
  for (const auto& s : signals) arr.push_back(complex_json(s.values));
  return dump(json{{"N", group.modulus}, {"d", group.dimension}, {"signals", arr}});
}

std::string report_to_json(const ProblemConfig& config, const SolveReport& report) {
  json orbits = json::array();
  for (const auto& o : report.orbits) {
    json spectrum = json::array();
    for (std::size_t p = 0; p < o.sigma2.size(); ++p)
      spectrum.push_back({{"i", o.labels[p].i}, {"g", o.labels[p].g}, {"sigma2", o.sigma2[p]}});
    orbits.push_back({{"rep", o.rep},
                      {"members", o.members},
                      {"stabilizer_order", o.stabilizer_order},
                      {"rank", o.rank},
                      {"route", to_string(o.route)},
                      {"diagnostics",
                       {{"tie", o.diagnostics.tie},
                        {"symmetrized", o.diagnostics.symmetrized},
                        {"capacity_constrained", o.diagnostics.capacity_constrained}}},
                      {"bound_residual", o.bound_residual},
                      {"achieved_residual", o.achieved_residual},
                      {"spectrum", spectrum}});
  }
  json j{{"m", report.m},
         {"kappa", report.kappa},
         {"seed", config.seed},
         {"achieved_error", report.achieved_error},
         {"spectral_bound", report.spectral_bound},
         {"any_diagnostic", report.any_diagnostic()},
         {"orbits", orbits}};
  return dump(j);
}

std::string spectrum_csv(const CrystalModel& model, std::span<const Signal> data) {
  const auto hats = transform_family(model.ambient(), data);
  std::string out = "orbit,rep,i,g,sigma2\n";
  for (std::size_t o = 0; o < model.orbits().size(); ++o) {
    const auto rep = model.orbits()[o].rep;
    const CMatrix a = pre_gramian(model, hats, rep);
    const auto labeled = label_lex(eig_hermitian(a.adjoint() * a, true), data.size(), model.group_size());
    for (std::size_t p = 0; p < labeled.labels.size(); ++p)
      out += std::to_string(o) + "," + std::to_string(rep) + "," + std::to_string(labeled.labels[p].i) + "," +
             std::to_string(labeled.labels[p].g) + "," + fmt_double(labeled.spectrum.values[p]) + "\n";
  }
  return out;
}

std::string orthogonality_to_json(const CrystalModel& model, std::span<const Signal> parts, double eps_rank) {
  std::vector<RangeFunctionTable> tables;
  for (const auto& p : parts) tables.push_back(invariant_range_function(model, std::span<const Signal>(&p, 1), eps_rank));
  json pairs = json::array();
  double worst = 0.0;
  for (std::size_t a = 0; a < tables.size(); ++a)
    for (std::size_t b = a + 1; b < tables.size(); ++b) {
      const double r = orthogonality_residual(tables[a], tables[b]);
      worst = std::max(worst, r);
      pairs.push_back({{"a", a}, {"b", b}, {"residual", r}});
    }
  json dims = json::array();
  for (const auto& t : tables) {
    std::vector<std::size_t> per;
    for (std::size_t w = 0; w < model.section_size(); ++w) per.push_back(t.dim(w));
    dims.push_back(per);
  }
  return dump(json{{"length", parts.size()}, {"max_residual", worst}, {"pairs", pairs}, {"fiber_dims", dims}});
}

std::string verify_to_json(const VerifyReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"worst", c.worst}, {"tol", c.tol}, {"where", c.where}, {"passed", c.passed()}});
  return dump(json{{"passed", report.passed()}, {"checks", checks}});
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::ValidationError, path.string() + ": cannot write");
  out << text;
  if (!out) throw Error(ErrorKind::ValidationError, path.string() + ": write failed");
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian:
    case ErrorKind::NotPsd:
    case ErrorKind::RankCollapse:
    case ErrorKind::NotParseval:
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::OracleCapExceeded:
    case ErrorKind::StateMissing:
      return 3;
    default:
      return 2;
  }
}

}  // namespace crystinv
