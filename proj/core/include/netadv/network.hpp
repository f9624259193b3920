#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "netadv/edge.hpp"
#include "netadv/grid.hpp"
#include "netadv/retardation.hpp"
#include "netadv/signal.hpp"

namespace netadv {

enum class VertexKind { Inflow, Internal, Outflow };

struct NetworkVertex {
  int id = 0;
  VertexKind kind = VertexKind::Internal;
};

struct NetworkEdge {
  int id = 0;
  int from = 0;  ///< left vertex (upstream)
  int to = 0;    ///< right vertex (downstream)
  double length = 1.0;
  double kappa = 1.0;
  int cells = 1;
  std::vector<double> velocity;    ///< one entry or N+1 samples
  std::optional<Signal> initial;   ///< profile in x; absent means zero
};

/**
 * Directed acyclic pipe network. Flow direction is fixed per edge (from ->
 * to). Boundary signals feed the inflow vertices; splitting coefficients
 * distribute each vertex signal to the outgoing edges.
 */
struct NetworkModel {
  TimeGrid time;
  std::vector<NetworkVertex> vertices;
  std::vector<NetworkEdge> edges;
  std::map<int, std::map<int, double>> alpha;  ///< vertex id -> (edge id -> weight)
  std::map<int, Signal> boundaries;            ///< inflow vertex id -> signal in t
  std::shared_ptr<const RetardationModel> retardation;  ///< applied to every edge
};

/**
 * Checks the numbering conventions (from < to per edge, arriving edge ids
 * below departing edge ids at every vertex), acyclicity, vertex incidence and
 * the splitting rows, and returns the deterministic topological edge order
 * (smallest edge id first among ready edges).
 */
std::vector<int> validate_and_order(const NetworkModel& model);

struct NetworkSolution {
  std::vector<int> order;                     ///< edge ids, topological
  std::map<int, EdgeSolution> edges;          ///< edge id -> solution
  std::map<int, std::vector<double>> vertex;  ///< vertex id -> q_m(t^n), n = 0..N
};

/**
 * Signal at a vertex: sum of the terminal concentration columns of all
 * arriving edges. Inflow vertices take their configured boundary signal,
 * sampled on the shared time grid.
 */
std::vector<double> vertex_signal(const NetworkModel& model, int vertex_id,
                                  const NetworkSolution& partial);

/** alpha-scaled copy of a vertex signal for one outgoing edge. */
std::vector<double> split_to_downstream(const std::vector<double>& signal, double alpha);

NetworkSolution solve_network(const NetworkModel& model, const SchemeConfig& config);

/** Sum of the per-edge conservation audits. */
ConservationAudit network_audit(const NetworkModel& model, const NetworkSolution& solution);

/** Assembles the single-edge problem for one network edge given its boundary column. */
EdgeProblem make_edge_problem(const NetworkModel& model, const NetworkEdge& edge,
                              std::vector<double> boundary);

}  // namespace netadv
