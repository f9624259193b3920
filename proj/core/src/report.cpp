#include "netadv/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace netadv {

double error_norm(const EdgeSolution& s, const EdgeProblem& p,
                  const std::function<double(double, double)>& exact) {
  if (!exact) throw std::invalid_argument("error_norm: no reference solution");
  double sum = 0.0;
  for (int i = 0; i <= s.cells; ++i)
    for (int n = 0; n <= s.steps; ++n)
      sum += std::fabs(s.at(i, n) - exact(p.space.x(i), p.time.time(n)));
  return sum;
}

std::pair<double, double> final_level_range(const EdgeSolution& s) {
  double lo = s.at(0, s.steps), hi = lo;
  for (int i = 1; i <= s.cells; ++i) {
    const double q = s.at(i, s.steps);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return {lo, hi};
}

ConvergenceReport convergence_study(const ScenarioFactory& factory, const SchemeConfig& config,
                                    const std::vector<std::pair<int, int>>& levels) {
  ConvergenceReport rep;
  double prev_error = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto [I, N] = levels[k];
    EdgeScenario sc = factory(I, N);
    if (rep.scenario.empty()) rep.scenario = sc.name;
    const EdgeSolution sol = solve_edge(sc.problem, config);
    ConvergenceRow row;
    row.cells = I;
    row.steps = N;
    // Tabulated errors carry the cell-size weighting h*tau, so the order of
    // convergence reads off directly from the doubling sequence.
    row.error = sc.problem.space.h(1) * sc.problem.time.dt() *
                error_norm(sol, sc.problem, sc.exact);
    row.eoc = (k == 0 || !(row.error > 0.0)) ? 0.0 : std::log2(prev_error / row.error);
    const auto [lo, hi] = final_level_range(sol);
    row.min = lo;
    row.max = hi;
    rep.rows.push_back(row);
    prev_error = row.error;
  }
  return rep;
}

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

void write_edge_csv(const std::string& path, const EdgeSolution& s, const SpaceGrid& space,
                    const TimeGrid& time) {
  std::ofstream out = open_out(path);
  out << "n,t,i,x,Q\n";
  for (int n = 0; n <= s.steps; ++n)
    for (int i = 0; i <= s.cells; ++i)
      out << n << ',' << format_full(time.time(n)) << ',' << i << ',' << format_full(space.x(i))
          << ',' << format_full(s.at(i, n)) << '\n';
}

void write_vertex_csv(const std::string& path, const std::vector<double>& series,
                      const TimeGrid& time) {
  std::ofstream out = open_out(path);
  out << "n,t,q\n";
  for (std::size_t n = 0; n < series.size(); ++n)
    out << n << ',' << format_full(time.time(static_cast<int>(n))) << ','
        << format_full(series[n]) << '\n';
}

void write_path_csv(const std::string& path, const NetworkModel& model,
                    const NetworkSolution& solution, const std::vector<int>& edge_ids, int step) {
  std::ofstream out = open_out(path);
  out << "edge,i,s,x,Q\n";  // s: arc length along the path
  double offset = 0.0;
  for (int eid : edge_ids) {
    const NetworkEdge* edge = nullptr;
    for (const auto& e : model.edges)
      if (e.id == eid) edge = &e;
    if (!edge) throw std::invalid_argument("write_path_csv: unknown edge id");
    const EdgeSolution& s = solution.edges.at(eid);
    const SpaceGrid grid = SpaceGrid::uniform(edge->length, edge->cells);
    for (int i = 0; i <= s.cells; ++i)
      out << eid << ',' << i << ',' << format_full(offset + grid.x(i)) << ','
          << format_full(grid.x(i)) << ',' << format_full(s.at(i, step)) << '\n';
    offset += edge->length;
  }
}

void write_convergence_csv(const std::string& path, const ConvergenceReport& rep) {
  std::ofstream out = open_out(path);
  out << "I,N,E,EOC,min,max\n";
  for (const auto& r : rep.rows)
    out << r.cells << ',' << r.steps << ',' << format_full(r.error) << ','
        << format_full(r.eoc) << ',' << format_full(r.min) << ',' << format_full(r.max) << '\n';
}

}  // namespace netadv
