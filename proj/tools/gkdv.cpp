#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "gkdv/diagnostics/diagnostics.hpp"
#include "gkdv/runs/scenarios.hpp"
#include "gkdv/solver/solve.hpp"
#include "gkdv/verify/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "gkdv 1.0.0";

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Manifest {
  std::map<std::string, std::string> kv;

  bool has(const std::string& k) const { return kv.count(k) != 0; }
  std::string str(const std::string& k, const std::string& def) const {
    auto it = kv.find(k);
    return it == kv.end() ? def : it->second;
  }
  double num(const std::string& k, double def) const {
    auto it = kv.find(k);
    if (it == kv.end()) return def;
    size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw ManifestError("manifest: bad number for key '" + k + "'");
    return v;
  }
  int integer(const std::string& k, int def) const {
    const double v = num(k, def);
    if (v != static_cast<int>(v)) throw ManifestError("manifest: key '" + k + "' must be integer");
    return static_cast<int>(v);
  }
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      // what to run
      "scenario", "c", "x0", "amplitude", "center", "width", "omega",
      "phi", "f", "phi_amplitude", "phi_center", "phi_width", "f_amplitude", "f_omega", "f_value",
      "phi_nodes",
      // solver config
      "k", "s", "T", "L", "n_x", "n_t", "window_T0", "picard_tol", "picard_max_iter",
      "compat_tol", "nonlinear_coefficient", "dx_target", "X",
      // runtime / output
      "threads", "out", "emit_field", "emit_boundary", "emit_mass", "emit_ledger",
      "field_stride_x", "field_stride_t"};
  return keys;
}

Manifest parse_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("manifest: cannot open " + path);
  Manifest m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ManifestError("manifest line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!known_keys().count(key))
      throw ManifestError("manifest line " + std::to_string(lineno) + ": unknown key '" + key +
                          "'");
    if (m.kv.count(key))
      throw ManifestError("manifest line " + std::to_string(lineno) + ": duplicate key '" + key +
                          "'");
    m.kv[key] = val;
  }
  return m;
}

gkdv::Scenario scenario_from_manifest(const Manifest& m) {
  if (m.has("scenario")) {
    std::map<std::string, double> params;
    for (const char* p : {"c", "x0", "amplitude", "center", "width", "omega", "k", "s"})
      if (m.has(p)) params[p] = m.num(p, 0.0);
    return gkdv::build_scenario(m.str("scenario", ""), params);
  }
  // Explicit data spec.
  gkdv::Scenario sc;
  sc.name = "custom";
  const std::string phi_kind = m.str("phi", "zero");
  const std::string f_kind = m.str("f", "zero");
  if (phi_kind == "zero") {
    sc.phi = [](double) { return 0.0; };
  } else if (phi_kind == "gaussian") {
    const double a = m.num("phi_amplitude", 1.0), c = m.num("phi_center", 6.0),
                 w = m.num("phi_width", 1.0);
    sc.phi = [a, c, w](double x) {
      const double z = (x - c) / w;
      return a * std::exp(-0.5 * z * z);
    };
  } else {
    throw ManifestError("manifest: phi must be zero|gaussian");
  }
  if (f_kind == "zero") {
    sc.f = [](double) { return 0.0; };
  } else if (f_kind == "sine") {
    const double a = m.num("f_amplitude", 1.0), om = m.num("f_omega", 2.0);
    sc.f = [a, om](double t) { return a * std::sin(om * t); };
  } else if (f_kind == "constant") {
    const double v = m.num("f_value", 0.0);
    sc.f = [v](double) { return v; };
  } else {
    throw ManifestError("manifest: f must be zero|sine|constant");
  }
  return sc;
}

void apply_config_overrides(const Manifest& m, gkdv::Scenario& sc) {
  gkdv::SolverConfig& c = sc.config;
  c.k = m.integer("k", c.k);
  c.s = m.num("s", c.s);
  c.T = m.num("T", c.T);
  c.L = m.num("L", c.L);
  c.n_x = m.integer("n_x", c.n_x);
  c.n_t = m.integer("n_t", c.n_t);
  c.window_T0 = m.num("window_T0", std::min(c.window_T0, c.T));
  c.picard_tol = m.num("picard_tol", c.picard_tol);
  c.picard_max_iter = m.integer("picard_max_iter", c.picard_max_iter);
  c.compat_tol = m.num("compat_tol", c.compat_tol);
  c.nonlinear_coefficient = m.num("nonlinear_coefficient", c.nonlinear_coefficient);
  c.dx_target = m.num("dx_target", c.dx_target);
  sc.X = m.num("X", sc.X);
}

int cmd_solve(const std::string& manifest_path, const std::string& out_override, int threads) {
  Manifest m;
  gkdv::Scenario sc;
  try {
    m = parse_manifest(manifest_path);
    sc = scenario_from_manifest(m);
    apply_config_overrides(m, sc);
    sc.config.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

#ifdef _OPENMP
  omp_set_num_threads(std::max(1, m.integer("threads", threads)));
#endif

  std::string out_dir = !out_override.empty() ? out_override : m.str("out", "");
  if (out_dir.empty()) {
    const char* env = std::getenv("GKDV_OUT_DIR");
    out_dir = env ? env : "gkdv_out";
  }
  fs::create_directories(out_dir);

  gkdv::BoundaryProblem prob;
  gkdv::SpaceTimeField u;
  gkdv::RunReport rep;
  try {
    prob = sc.make_problem(m.integer("phi_nodes", 2049));
    auto solved = gkdv::solve_nonlinear(prob);
    u = std::move(solved.first);
    rep = std::move(solved.second);
  } catch (const gkdv::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\nresidual history:";
    std::ofstream hist(fs::path(out_dir) / "residual_history.tsv");
    for (size_t i = 0; i < e.residual_history.size(); ++i) {
      std::cerr << ' ' << g17(e.residual_history[i]);
      hist << i << '\t' << g17(e.residual_history[i]) << '\n';
    }
    std::cerr << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const int i0 = u.xgrid.index_of(0.0);
  const gkdv::Grid1D tg(0.0, prob.config.T, prob.config.n_t);

  // Metadata: every parameter and constant the run used.
  json meta;
  meta["version"] = kVersion;
  meta["scenario"] = sc.name;
  meta["manifest"] = m.kv;
  meta["config"] = {{"k", prob.config.k},
                    {"s", prob.config.s},
                    {"T", prob.config.T},
                    {"n_t", prob.config.n_t},
                    {"window_T0", prob.config.window_T0},
                    {"picard_tol", prob.config.picard_tol},
                    {"picard_max_iter", prob.config.picard_max_iter},
                    {"compat_tol", prob.config.compat_tol},
                    {"nonlinear_coefficient", prob.config.nonlinear_coefficient}};
  meta["resolved"] = {{"box_half_width", g17(rep.box_half_width)},
                      {"n_x", rep.n_x_used},
                      {"data_band", g17(rep.data_band)},
                      {"safe_horizon", g17(rep.safe_horizon)},
                      {"airy_constant_CA", g17(rep.airy_constant)}};
  meta["flags"] = {{"converged", rep.converged},
                   {"wraparound_warning", rep.wraparound_warning},
                   {"regularity_warning", rep.regularity_warning}};
  std::ofstream(fs::path(out_dir) / "run_meta.json") << meta.dump(2) << "\n";

  json repj;
  repj["converged"] = rep.converged;
  repj["picard_iters"] = rep.picard_iters;
  repj["window_starts"] = rep.window_starts;
  repj["residual_history_last_window"] = rep.residual_history;
  repj["compat_projection"] = g17(rep.compat_projection);
  repj["max_boundary_error"] =
      g17(*std::max_element(rep.boundary_error.begin(), rep.boundary_error.end()));
  std::ofstream(fs::path(out_dir) / "report.json") << repj.dump(2) << "\n";

  if (m.integer("emit_boundary", 1)) {
    std::ofstream f(fs::path(out_dir) / "boundary.tsv");
    f << "t\tu0\tf\tabs_err\n";
    for (int n = 0; n < tg.n; ++n)
      f << g17(tg.node(n)) << '\t' << g17(u.at(n, i0).real()) << '\t'
        << g17(prob.f.values.empty() ? 0.0 : sc.f(tg.node(n))) << '\t'
        << g17(rep.boundary_error[n]) << '\n';
  }
  if (m.integer("emit_mass", 1)) {
    std::ofstream f(fs::path(out_dir) / "mass.tsv");
    f << "t\tmass\n";
    for (int n = 0; n < tg.n; ++n) f << g17(tg.node(n)) << '\t' << g17(rep.mass[n]) << '\n';
  }
  if (m.integer("emit_ledger", 1)) {
    const gkdv::SampledFunction f_res = gkdv::SampledFunction::from_real(
        tg, gkdv::DomainTag::time, [&sc](double t) { return sc.f(t); });
    gkdv::SampledFunction phi_res = prob.phi;
    const gkdv::IdentityLedger led = gkdv::quarter_plane_balance(u, f_res, phi_res, prob.config.k);
    std::ofstream f(fs::path(out_dir) / "energy.tsv");
    f << "t\tlhs\trhs\trel_imbalance\n";
    for (int n = 0; n < tg.n; ++n)
      f << g17(tg.node(n)) << '\t' << g17(led.lhs[n]) << '\t' << g17(led.rhs[n]) << '\t'
        << g17(led.relative_imbalance[n]) << '\n';
  }
  if (m.integer("emit_field", 0)) {
    const int sx = std::max(1, m.integer("field_stride_x", std::max(1, u.xgrid.n / 256)));
    const int st = std::max(1, m.integer("field_stride_t", std::max(1, u.tgrid.n / 128)));
    std::ofstream f(fs::path(out_dir) / "field.tsv");
    f << "t\\x";
    for (int ix = 0; ix < u.xgrid.n; ix += sx) f << '\t' << g17(u.xgrid.node(ix));
    f << '\n';
    for (int it = 0; it < u.tgrid.n; it += st) {
      f << g17(u.tgrid.node(it));
      for (int ix = 0; ix < u.xgrid.n; ix += sx) f << '\t' << g17(u.at(it, ix).real());
      f << '\n';
    }
  }
  std::cout << "run written to " << out_dir << " (max boundary error "
            << g17(*std::max_element(rep.boundary_error.begin(), rep.boundary_error.end()))
            << ")\n";
  return 0;
}

int cmd_verify(const std::string& suite, int threads) {
  if (!gkdv::known_suite(suite)) {
    std::cerr << "error: unknown suite '" << suite
              << "' (expected fractional|airy|linear|solver|all)\n";
    return 2;
  }
#ifdef _OPENMP
  omp_set_num_threads(std::max(1, threads));
#endif
  const auto results = gkdv::run_suite(suite);
  const bool ok = gkdv::print_results(results, std::cout);
  return ok ? 0 : 1;
}

std::vector<std::vector<std::string>> read_tsv(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ManifestError("plotdata: missing " + p.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, '\t')) cols.push_back(c);
    rows.push_back(std::move(cols));
  }
  if (rows.size() < 2) throw ManifestError("plotdata: corrupt file " + p.string());
  return rows;
}

int cmd_plotdata(const std::string& run_dir, const std::string& kind, double tstar,
                 const std::string& out_path) {
  try {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      os = &file;
    }
    if (kind == "boundary" || kind == "mass") {
      const auto rows = read_tsv(fs::path(run_dir) / (kind == "boundary" ? "boundary.tsv" : "mass.tsv"));
      for (size_t i = 1; i < rows.size(); ++i) *os << rows[i][0] << '\t' << rows[i][1] << '\n';
      return 0;
    }
    if (kind == "snapshot") {
      const auto rows = read_tsv(fs::path(run_dir) / "field.tsv");
      size_t best = 1;
      double bestd = 1e300;
      for (size_t i = 1; i < rows.size(); ++i) {
        const double d = std::abs(std::stod(rows[i][0]) - tstar);
        if (d < bestd) {
          bestd = d;
          best = i;
        }
      }
      for (size_t j = 1; j < rows[0].size(); ++j)
        *os << rows[0][j] << '\t' << rows[best][j] << '\n';
      return 0;
    }
    std::cerr << "error: unknown slice kind '" << kind << "' (boundary|mass|snapshot)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gkdv: generalized KdV on the right half-line by boundary forcing"};
  app.require_subcommand(1);

  std::string manifest_path, out_dir, suite = "all", run_dir, kind = "boundary", out_file;
  double tstar = 0.0;
  int threads = 1;

  CLI::App* solve = app.add_subcommand("solve", "run a solve described by a manifest");
  solve->add_option("--manifest", manifest_path, "flat key = value manifest")->required();
  solve->add_option("--out", out_dir, "output directory (else manifest 'out', else $GKDV_OUT_DIR)");
  solve->add_option("--threads", threads, "OpenMP threads (default 1)");

  CLI::App* verify = app.add_subcommand("verify", "run a property/acceptance suite");
  verify->add_option("--suite", suite, "fractional|airy|linear|solver|all");
  verify->add_option("--threads", threads, "OpenMP threads (default 1)");

  CLI::App* plot = app.add_subcommand("plotdata", "emit plot-ready columns from a run directory");
  plot->add_option("--run", run_dir, "directory produced by solve")->required();
  plot->add_option("--kind", kind, "boundary|mass|snapshot");
  plot->add_option("--time", tstar, "snapshot time");
  plot->add_option("--out", out_file, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return cmd_solve(manifest_path, out_dir, threads);
  if (verify->parsed()) return cmd_verify(suite, threads);
  if (plot->parsed()) return cmd_plotdata(run_dir, kind, tstar, out_file);
  return 2;
}
