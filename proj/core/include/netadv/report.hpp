#pragma once

#include <functional>
#include <string>
#include <vector>

#include "netadv/edge.hpp"
#include "netadv/network.hpp"
#include "netadv/scenarios.hpp"

namespace netadv {

/** Plain double sum of absolute nodal errors over the whole space-time table. */
double error_norm(const EdgeSolution& solution, const EdgeProblem& problem,
                  const std::function<double(double x, double t)>& exact);

/** Smallest and largest value of the final time level. */
std::pair<double, double> final_level_range(const EdgeSolution& solution);

struct ConvergenceRow {
  int cells = 0;
  int steps = 0;
  double error = 0.0;  ///< h*tau-weighted absolute error sum
  double eoc = 0.0;  ///< log2(previous error / error); 0 in the first row
  double min = 0.0;  ///< over the final time level
  double max = 0.0;
};

struct ConvergenceReport {
  std::string scenario;
  std::string scheme;
  std::vector<ConvergenceRow> rows;
};

using ScenarioFactory = std::function<EdgeScenario(int I, int N)>;

/** Runs a doubling sequence of (I, N) levels and tabulates error and order. */
ConvergenceReport convergence_study(const ScenarioFactory& factory, const SchemeConfig& config,
                                    const std::vector<std::pair<int, int>>& levels);

/** Formats one number with 17 significant digits (round-trip safe). */
std::string format_full(double x);

void write_edge_csv(const std::string& path, const EdgeSolution& solution,
                    const SpaceGrid& space, const TimeGrid& time);
void write_vertex_csv(const std::string& path, const std::vector<double>& series,
                      const TimeGrid& time);
/** Concatenated profile along a path of edge ids at one time step. */
void write_path_csv(const std::string& path, const NetworkModel& model,
                    const NetworkSolution& solution, const std::vector<int>& edge_ids, int step);
void write_convergence_csv(const std::string& path, const ConvergenceReport& report);

}  // namespace netadv
