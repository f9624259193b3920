#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netadv/network_io.hpp"
#include "netadv/nonlinear.hpp"
#include "netadv/report.hpp"
#include "netadv/scenarios.hpp"

namespace fs = std::filesystem;
using namespace netadv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInvariant = 3;

SchemeConfig scheme_from_name(const std::string& name) {
  SchemeConfig cfg;
  if (name == "first")
    cfg.variant = SchemeVariant::FirstOrder;
  else if (name == "second")
    cfg.variant = SchemeVariant::FixedWeight;
  else if (name == "third")
    cfg.variant = SchemeVariant::ThirdOrder;
  else if (name == "weno")
    cfg.variant = SchemeVariant::WenoHeuristic;
  else if (name == "hr")
    cfg.variant = SchemeVariant::HighResolution;
  else if (name == "direct-hr")
    cfg.variant = SchemeVariant::DirectHR;
  else
    throw std::invalid_argument("unknown scheme \"" + name + "\"");
  return cfg;
}

struct ScenarioDefaults {
  int I;
  int N;
};

std::optional<ScenarioDefaults> edge_scenario_defaults(const std::string& name) {
  if (name == "smooth") return ScenarioDefaults{512, 256};
  if (name == "shape1") return ScenarioDefaults{960, 160};
  if (name == "shape2") return ScenarioDefaults{1120, 160};
  if (name == "shape3") return ScenarioDefaults{1280, 160};
  if (name == "shape4") return ScenarioDefaults{1440, 160};
  if (name == "nonlinear") return ScenarioDefaults{400, 50};
  return std::nullopt;
}

EdgeScenario make_edge_scenario(const std::string& name, int I, int N) {
  if (name == "smooth") return scenario_smooth_gaussian(I, N);
  if (name.rfind("shape", 0) == 0 && name.size() == 6)
    return scenario_four_shapes(name[5] - '0', I, N);
  if (name == "nonlinear") return scenario_nonlinear_isotherm(I, N);
  throw std::invalid_argument("unknown scenario \"" + name + "\"");
}

std::optional<NetworkModel> make_network_scenario(const std::string& name) {
  if (name == "triangle-coarse") return scenario_triangle(TriangleLevel::Coarse);
  if (name == "triangle-fine") return scenario_triangle(TriangleLevel::Fine);
  if (name == "triangle-finer") return scenario_triangle(TriangleLevel::Finer);
  if (name == "sewer") return scenario_sewer();
  return std::nullopt;
}

int nearest_step(const TimeGrid& time, double t) {
  if (t < 0.0 || t > time.horizon + 1e-12)
    throw std::invalid_argument("snapshot time outside [0, T]");
  return std::clamp(static_cast<int>(std::lround(t / time.dt())), 0, time.steps);
}

void write_snapshot_csv(const std::string& path, const EdgeSolution& s, const SpaceGrid& space,
                        int step) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "i,x,Q\n";
  for (int i = 0; i <= s.cells; ++i)
    out << i << ',' << format_full(space.x(i)) << ',' << format_full(s.at(i, step)) << '\n';
}

struct AuditLine {
  std::string label;
  ConservationAudit audit;
  std::size_t dmp_violations = 0;
  double min = 0.0;
  double max = 0.0;
};

bool audit_ok(const AuditLine& a) {
  return a.dmp_violations == 0 &&
         std::fabs(a.audit.residual) <= 1e-10 * std::max(1e-300, a.audit.throughput);
}

void write_audit(const std::string& path, const std::vector<AuditLine>& lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& a : lines) {
    out << a.label << ":\n"
        << "  min = " << format_full(a.min) << "\n"
        << "  max = " << format_full(a.max) << "\n"
        << "  stored = " << format_full(a.audit.stored) << "\n"
        << "  initial = " << format_full(a.audit.initial) << "\n"
        << "  inflow = " << format_full(a.audit.inflow) << "\n"
        << "  outflow = " << format_full(a.audit.outflow) << "\n"
        << "  conservation residual = " << format_full(a.audit.residual) << "\n"
        << "  bound violations = " << a.dmp_violations << "\n"
        << "  status = " << (audit_ok(a) ? "ok" : "VIOLATION") << "\n";
  }
}

std::pair<double, double> table_range(const EdgeSolution& s) {
  double lo = s.values.front(), hi = lo;
  for (double q : s.values) {
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return {lo, hi};
}

int run_single_edge(const EdgeScenario& sc, const SchemeConfig& cfg, const fs::path& out_dir,
                    const std::vector<double>& snapshots, bool strict) {
  const EdgeSolution sol = solve_edge(sc.problem, cfg);
  write_edge_csv((out_dir / "edge_0.csv").string(), sol, sc.problem.space, sc.problem.time);
  for (double t : snapshots) {
    const int n = nearest_step(sc.problem.time, t);
    write_snapshot_csv((out_dir / ("snapshot_edge_0_n" + std::to_string(n) + ".csv")).string(),
                       sol, sc.problem.space, n);
  }
  AuditLine line;
  line.label = "edge 0 (" + sc.name + ")";
  line.audit = conservation_audit(sol, sc.problem);
  line.dmp_violations = dmp_check(sol).size();
  std::tie(line.min, line.max) = table_range(sol);
  write_audit((out_dir / "audit.txt").string(), {line});
  std::cout << "edge 0: min " << format_full(line.min) << ", max " << format_full(line.max)
            << ", conservation residual " << format_full(line.audit.residual) << ", bound violations "
            << line.dmp_violations << "\n";
  if (strict && !audit_ok(line)) {
    std::cerr << "invariant violation: see " << (out_dir / "audit.txt").string() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

int run_network(const NetworkModel& model, const SchemeConfig& cfg, const fs::path& out_dir,
                const std::vector<double>& snapshots, bool strict, bool sewer_paths) {
  const NetworkSolution sol = solve_network(model, cfg);

  {
    std::ofstream out(out_dir / "courant.csv");
    out << "edge,cells,courant\n";
    for (const auto& e : model.edges) {
      const double h = e.length / e.cells;
      const double kappa = model.retardation ? model.retardation->min_derivative() : e.kappa;
      out << e.id << ',' << e.cells << ','
          << format_full(e.velocity[0] * model.time.dt() / (kappa * h)) << '\n';
    }
  }

  std::vector<AuditLine> lines;
  for (const auto& e : model.edges) {
    const EdgeSolution& s = sol.edges.at(e.id);
    const SpaceGrid grid = SpaceGrid::uniform(e.length, e.cells);
    write_edge_csv((out_dir / ("edge_" + std::to_string(e.id) + ".csv")).string(), s, grid,
                   model.time);
    for (double t : snapshots) {
      const int n = nearest_step(model.time, t);
      write_snapshot_csv((out_dir / ("snapshot_edge_" + std::to_string(e.id) + "_n" +
                                     std::to_string(n) + ".csv"))
                             .string(),
                         s, grid, n);
    }
    std::vector<double> boundary(model.time.steps + 1);
    for (int n = 0; n <= model.time.steps; ++n) boundary[n] = s.at(0, n);
    const EdgeProblem p = make_edge_problem(model, e, boundary);
    AuditLine line;
    line.label = "edge " + std::to_string(e.id);
    line.audit = conservation_audit(s, p);
    line.dmp_violations = dmp_check(s).size();
    std::tie(line.min, line.max) = table_range(s);
    lines.push_back(line);
  }
  for (const auto& [vid, series] : sol.vertex)
    write_vertex_csv((out_dir / ("vertex_" + std::to_string(vid) + ".csv")).string(), series,
                     model.time);
  if (sewer_paths) {
    for (double t : snapshots.empty() ? std::vector<double>{model.time.horizon} : snapshots) {
      const int n = nearest_step(model.time, t);
      write_path_csv((out_dir / ("path_BC1_n" + std::to_string(n) + ".csv")).string(), model, sol,
                     sewer_path_bc1(), n);
      write_path_csv((out_dir / ("path_BC3_n" + std::to_string(n) + ".csv")).string(), model, sol,
                     sewer_path_bc3(), n);
    }
  }
  write_audit((out_dir / "audit.txt").string(), lines);

  bool ok = true;
  for (const auto& line : lines) ok = ok && audit_ok(line);
  std::cout << "solved " << model.edges.size() << " edges, audit "
            << (ok ? "clean" : "reports violations") << "\n";
  if (strict && !ok) {
    std::cerr << "invariant violation: see " << (out_dir / "audit.txt").string() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

const char* kPlotHeader =
    "#!/usr/bin/env python3\n"
    "import csv\n"
    "import os\n"
    "import matplotlib\n"
    "matplotlib.use(\"Agg\")\n"
    "import matplotlib.pyplot as plt\n\n"
    "HERE = os.path.dirname(os.path.abspath(__file__))\n\n"
    "def read_csv(name):\n"
    "    with open(os.path.join(HERE, name)) as f:\n"
    "        rows = list(csv.DictReader(f))\n"
    "    return rows\n\n";

void emit_plot_script(const fs::path& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kPlotHeader << body;
}

int cmd_plot(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::invalid_argument("no such directory: " + dir.string());
  std::vector<std::string> edge_files, path_files;
  bool has_eoc = false;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("edge_", 0) == 0 && name.find(".csv") != std::string::npos)
      edge_files.push_back(name);
    if (name.rfind("path_", 0) == 0) path_files.push_back(name);
    if (name == "eoc.csv") has_eoc = true;
  }
  std::sort(edge_files.begin(), edge_files.end());
  std::sort(path_files.begin(), path_files.end());
  if (edge_files.empty() && path_files.empty() && !has_eoc)
    throw std::invalid_argument("no run artifacts in " + dir.string());

  int scripts = 0;
  if (!edge_files.empty()) {
    std::string body = "files = [\n";
    for (const auto& f : edge_files) body += "    \"" + f + "\",\n";
    body +=
        "]\n"
        "fig, ax = plt.subplots()\n"
        "for f in files:\n"
        "    rows = read_csv(f)\n"
        "    last = max(int(r[\"n\"]) for r in rows)\n"
        "    xs = [float(r[\"x\"]) for r in rows if int(r[\"n\"]) == last]\n"
        "    qs = [float(r[\"Q\"]) for r in rows if int(r[\"n\"]) == last]\n"
        "    ax.plot(xs, qs, label=f.replace(\".csv\", \"\"))\n"
        "ax.set_xlabel(\"x\")\n"
        "ax.set_ylabel(\"Q\")\n"
        "ax.legend()\n"
        "fig.savefig(os.path.join(HERE, \"final_profiles.png\"), dpi=150)\n";
    emit_plot_script(dir / "plot_final_profiles.py", body);
    ++scripts;
  }
  for (const auto& f : path_files) {
    const std::string stem = f.substr(0, f.size() - 4);
    std::string body =
        "rows = read_csv(\"" + f + "\")\n"
        "xs = [float(r[\"s\"]) for r in rows]\n"
        "qs = [float(r[\"Q\"]) for r in rows]\n"
        "fig, ax = plt.subplots()\n"
        "ax.plot(xs, qs)\n"
        "ax.set_xlabel(\"arc length\")\n"
        "ax.set_ylabel(\"Q\")\n"
        "fig.savefig(os.path.join(HERE, \"" + stem + ".png\"), dpi=150)\n";
    emit_plot_script(dir / ("plot_" + stem + ".py"), body);
    ++scripts;
  }
  if (has_eoc) {
    std::string body =
        "rows = read_csv(\"eoc.csv\")\n"
        "Is = [int(r[\"I\"]) for r in rows]\n"
        "Es = [float(r[\"E\"]) for r in rows]\n"
        "fig, ax = plt.subplots()\n"
        "ax.loglog(Is, Es, \"o-\")\n"
        "ax.set_xlabel(\"I\")\n"
        "ax.set_ylabel(\"E\")\n"
        "fig.savefig(os.path.join(HERE, \"eoc.png\"), dpi=150)\n";
    emit_plot_script(dir / "plot_eoc.py", body);
    ++scripts;
  }
  std::cout << "wrote " << scripts << " plot scripts to " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-preserving implicit advection solver for pipe networks"};
  app.require_subcommand(1);

  std::string scenario, config_path, scheme = "hr", out_dir = ".";
  int I = 0, N = 0, levels = 4;
  std::vector<double> snapshots;
  bool strict = false;
  double cmin = 0.0, weno_threshold = 0.0;
  bool has_cmin = false, has_threshold = false;

  auto add_common = [&](CLI::App* cmd, bool with_levels) {
    cmd->add_option("--scenario", scenario, "built-in scenario name");
    if (!with_levels) cmd->add_option("--config", config_path, "network description file");
    cmd->add_option("--scheme", scheme, "first|second|third|weno|hr|direct-hr");
    cmd->add_option("--I", I, "space cells override");
    cmd->add_option("--N", N, "time steps override");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--cmin", cmin, "lower Courant bound for nonlinear limiting")
        ->each([&](const std::string&) { has_cmin = true; });
    cmd->add_option("--weno-threshold", weno_threshold,
                    "apply the smoothness weight only below this magnitude")
        ->each([&](const std::string&) { has_threshold = true; });
    if (with_levels) cmd->add_option("--levels", levels, "number of doubling levels");
  };

  CLI::App* run = app.add_subcommand("run", "solve one scenario or network file");
  add_common(run, false);
  run->add_option("--snapshot", snapshots, "profile snapshot times")->delimiter(',');
  run->add_flag("--strict", strict, "exit 3 when a solution invariant is violated");

  CLI::App* eoc = app.add_subcommand("eoc", "grid refinement study");
  add_common(eoc, true);

  std::string plot_dir = ".";
  CLI::App* plot = app.add_subcommand("plot", "emit plot scripts for run artifacts");
  plot->add_option("--in", plot_dir, "directory with run artifacts");

  CLI::App* list = app.add_subcommand("scenarios", "list built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (list->parsed()) {
      for (const auto& name : scenario_names()) std::cout << name << "\n";
      return kExitOk;
    }
    if (plot->parsed()) return cmd_plot(plot_dir);

    SchemeConfig cfg = scheme_from_name(scheme);
    if (has_cmin) cfg.courant_min = cmin;
    if (has_threshold) cfg.weno_threshold = weno_threshold;

    fs::create_directories(out_dir);

    if (eoc->parsed()) {
      if (scenario.empty()) throw std::invalid_argument("eoc needs --scenario");
      const auto defaults = edge_scenario_defaults(scenario);
      if (!defaults) throw std::invalid_argument("eoc: scenario has no reference solution");
      if (scenario != "smooth")
        throw std::invalid_argument("eoc: scenario \"" + scenario +
                                    "\" has no exact solution for error measurement");
      int I0 = I > 0 ? I : 256;
      int N0 = N > 0 ? N : 128;
      std::vector<std::pair<int, int>> lv;
      for (int k = 0; k < levels; ++k) lv.emplace_back(I0 << k, N0 << k);
      ConvergenceReport rep = convergence_study(
          [&](int Ii, int Nn) { return make_edge_scenario(scenario, Ii, Nn); }, cfg, lv);
      rep.scheme = scheme;
      write_convergence_csv((fs::path(out_dir) / "eoc.csv").string(), rep);
      std::cout << "I,N,E,EOC,min,max\n";
      for (const auto& r : rep.rows)
        std::cout << r.cells << ',' << r.steps << ',' << format_full(r.error) << ','
                  << format_full(r.eoc) << ',' << format_full(r.min) << ',' << format_full(r.max)
                  << "\n";
      return kExitOk;
    }

    // run
    if (scenario.empty() == config_path.empty())
      throw std::invalid_argument("run needs exactly one of --scenario or --config");
    if (!config_path.empty()) {
      NetworkModel model = load_network(config_path);
      return run_network(model, cfg, out_dir, snapshots, strict, false);
    }
    if (auto model = make_network_scenario(scenario))
      return run_network(*model, cfg, out_dir, snapshots, strict, scenario == "sewer");
    const auto defaults = edge_scenario_defaults(scenario);
    if (!defaults) throw std::invalid_argument("unknown scenario \"" + scenario + "\"");
    const EdgeScenario sc =
        make_edge_scenario(scenario, I > 0 ? I : defaults->I, N > 0 ? N : defaults->N);
    if (scenario == "nonlinear" && !cfg.courant_min &&
        cfg.variant == SchemeVariant::HighResolution)
      cfg.courant_min = 40.0 / 11.0;
    return run_single_edge(sc, cfg, out_dir, snapshots, strict);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
}
