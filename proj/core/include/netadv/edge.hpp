#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "netadv/grid.hpp"
#include "netadv/retardation.hpp"

namespace netadv {

/**
 * One advection problem on a single edge: kappa*dq/dt + v(t)*dq/dx = 0 on
 * (0,L) x (0,T], predetermined flow direction v > 0, with the full boundary
 * column Q_0^n and initial row Q_i^0 prescribed.
 */
struct EdgeProblem {
  SpaceGrid space;
  TimeGrid time;
  double capacity = 1.0;  ///< kappa; ignored when a retardation model is set
  std::shared_ptr<const RetardationModel> retardation;  ///< null => linear theta = kappa*q
  std::vector<double> velocity;  ///< v(t^n), n = 0..N; a single entry means constant
  std::vector<double> boundary;  ///< Q_0^n, n = 0..N
  std::vector<double> initial;   ///< Q_i^0, i = 0..I

  double v(int n) const { return velocity.size() == 1 ? velocity[0] : velocity[n]; }
  void validate() const;
};

/** Which conservation telescoping the stored fluxes satisfy. */
enum class FluxStaggering { Time, Space };

/** Complete space-time value table for one edge, plus limiter bookkeeping. */
struct EdgeSolution {
  int cells = 0;
  int steps = 0;
  std::vector<double> values;    ///< Q_i^n, (I+1) x (N+1)
  std::vector<double> limiter;   ///< applied limiter per node (1 where unused)
  std::vector<double> flux;      ///< Time: Theta_i^{n+1/2}; Space: interface flux at x_i, step n
  std::vector<unsigned char> repeats;  ///< corrector repetitions per node
  long corrected_nodes = 0;      ///< nodes where a corrector solve was applied
  long repeated_nodes = 0;       ///< nodes where the corrector had to be repeated
  FluxStaggering staggering = FluxStaggering::Time;

  EdgeSolution() = default;
  EdgeSolution(int I, int N)
      : cells(I),
        steps(N),
        values(static_cast<std::size_t>(I + 1) * (N + 1), 0.0),
        limiter(static_cast<std::size_t>(I + 1) * (N + 1), 1.0),
        flux(static_cast<std::size_t>(I + 1) * (N + 1), 0.0),
        repeats(static_cast<std::size_t>(I + 1) * (N + 1), 0) {}

  std::size_t index(int i, int n) const {
    return static_cast<std::size_t>(i) * (steps + 1) + n;
  }
  double& at(int i, int n) { return values[index(i, n)]; }
  double at(int i, int n) const { return values[index(i, n)]; }
};

/** The two upstream values and own previous value entering one node solve. */
struct NodeStencil {
  double upstream_next;  ///< Q_{i-1}^{n+1}
  double upstream;       ///< Q_{i-1}^n
  double previous;       ///< Q_i^{n-1}
};

/** Predicted value from the linear-weight single-unknown equation. */
double predict_node(const NodeStencil& s, double courant, double wbar, double psi_prev);

/** Corrected value using the limited flux; psi = 0 reduces to first order. */
double correct_node(const NodeStencil& s, double courant, double psi, double psi_prev);

EdgeSolution solve_first_order(const EdgeProblem& problem);
EdgeSolution solve_fixed_weight(const EdgeProblem& problem, double weight);
EdgeSolution solve_third_order(const EdgeProblem& problem);
EdgeSolution solve_high_resolution(const EdgeProblem& problem, const SchemeConfig& config = {});
EdgeSolution solve_weno_heuristic(const EdgeProblem& problem, const SchemeConfig& config = {});

/** Time-marching counterpart (constant Courant number required). */
EdgeSolution solve_direct_hr(const EdgeProblem& problem, const SchemeConfig& config = {});
EdgeSolution solve_direct_fixed(const EdgeProblem& problem, double weight);

/** Dispatch on config.variant; routes to the nonlinear path when a retardation model is set. */
EdgeSolution solve_edge(const EdgeProblem& problem, const SchemeConfig& config);

struct DmpViolation {
  int i = 0;
  int n = 0;
  double magnitude = 0.0;
};

/**
 * Checks min{Q_i^{n-1}, Q_{i-1}^n} <= Q_i^n <= max{...} at every node, with
 * 1e-13 relative tolerance. Empty result means the bounds hold everywhere.
 */
std::vector<DmpViolation> dmp_check(const EdgeSolution& solution);

struct ConservationAudit {
  double stored = 0.0;    ///< sum_i h_i * Theta_i^{N+1/2}
  double initial = 0.0;   ///< sum_i h_i * Theta_i^{1/2}
  double inflow = 0.0;    ///< sum_n tau * v^n * Q_0^n
  double outflow = 0.0;   ///< sum_n tau * v^n * Q_I^n
  double residual = 0.0;  ///< stored - initial - inflow + outflow
  double throughput = 0.0;  ///< |inflow| + |outflow| + |initial| + |stored|
};

ConservationAudit conservation_audit(const EdgeSolution& solution, const EdgeProblem& problem);

}  // namespace netadv
