#pragma once

#include "netadv/edge.hpp"
#include "netadv/grid.hpp"
#include "netadv/retardation.hpp"

namespace netadv {

/**
 * Mean-value Courant number for theta-valued transport:
 * C = (Q_i - Q_im1)/(theta(Q_i) - theta(Q_im1)) * tau*v/h, with the
 * derivative form tau*v/(theta'(Q_i)*h) when the two values coincide.
 */
double nonlinear_courant(double q_i, double q_im1, double tau, double v, double h,
                         const RetardationModel& model);

/**
 * One scalar node equation F(Q) = (1 - psi/2)*theta(Q) + g*Q - rhs with
 * g = tau*v/h > 0. Strictly increasing for psi <= 2.
 */
struct NonlinearNodeEquation {
  const RetardationModel* model = nullptr;
  double psi = 0.0;
  double g = 0.0;
  double rhs = 0.0;

  double eval(double q) const { return (1.0 - 0.5 * psi) * model->value(q) + g * q - rhs; }
  double slope(double q) const { return (1.0 - 0.5 * psi) * model->derivative(q) + g; }
};

/**
 * Root of a monotone node equation by Newton iteration with a bisection
 * safeguard. The initial bracket [lo, hi] is widened geometrically up to
 * eight times if it does not contain the root.
 */
double solve_node_scalar(const NonlinearNodeEquation& eq, double lo, double hi);

EdgeSolution solve_nonlinear_first_order(const EdgeProblem& problem);
EdgeSolution solve_nonlinear_hr(const EdgeProblem& problem, const SchemeConfig& config = {});

}  // namespace netadv
