#include "netadv/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "netadv/kernels.hpp"

namespace netadv {

double nonlinear_courant(double q_i, double q_im1, double tau, double v, double h,
                         const RetardationModel& model) {
  const double g = v * tau / h;
  if (q_i == q_im1) return g / model.derivative(q_i);
  return (q_i - q_im1) / (model.value(q_i) - model.value(q_im1)) * g;
}

double solve_node_scalar(const NonlinearNodeEquation& eq, double lo, double hi) {
  if (!eq.model) throw std::invalid_argument("solve_node_scalar: missing retardation model");
  if (!(eq.psi <= 2.0)) throw std::invalid_argument("solve_node_scalar: psi must be <= 2");
  if (!(eq.g > 0.0)) throw std::invalid_argument("solve_node_scalar: g must be positive");
  if (lo > hi) std::swap(lo, hi);

  double flo = eq.eval(lo);
  double fhi = eq.eval(hi);
  if (!(fhi >= flo)) throw std::logic_error("solve_node_scalar: equation not increasing");

  // Widen only the failing side: the equation need not stay monotone far
  // outside the data range, so moving the good end can lose the bracket.
  double width = std::max(hi - lo, 1.0);
  int widen = 0;
  while ((flo > 0.0 || fhi < 0.0) && widen < 8) {
    if (flo > 0.0) {
      lo -= width;
      flo = eq.eval(lo);
    }
    if (fhi < 0.0) {
      hi += width;
      fhi = eq.eval(hi);
    }
    width *= 2.0;
    ++widen;
  }
  if (flo > 0.0 || fhi < 0.0)
    throw std::runtime_error("solve_node_scalar: failed to bracket the root");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;

  const double scale = std::max({1.0, std::fabs(eq.rhs), std::fabs(flo), std::fabs(fhi)});
  const double ftol = 1e-12 * scale;

  double q = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    const double f = eq.eval(q);
    if (f == 0.0) return q;
    if (f > 0.0)
      hi = q;
    else
      lo = q;
    const double df = eq.slope(q);
    double next = (df > 0.0) ? q - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    // Stop on a stationary iterate, not on |F| alone: near-zero stencils
    // would otherwise accept the midpoint without a single Newton step.
    if (std::fabs(next - q) <= 1e-15 * std::max(1.0, std::fabs(q)) && std::fabs(f) <= ftol)
      return next;
    q = next;
  }
  return q;
}

namespace {

struct NodeBracket {
  double lo, hi;
};

NodeBracket stencil_bracket(double a, double b) {
  return {std::min(a, b), std::max(a, b)};
}

bool theta_inequalities_hold(double psi, double num, double den, double amp) {
  if (psi == 0.0) return true;
  if (den == 0.0) return true;
  if (num == 0.0) return false;
  if (num * den < 0.0) return false;
  return psi * std::fabs(den) <= amp * std::fabs(num);
}

EdgeSolution seed_nonlinear(const EdgeProblem& p) {
  EdgeSolution s(p.space.cells(), p.time.steps);
  for (int i = 0; i <= s.cells; ++i) s.at(i, 0) = p.initial[i];
  for (int n = 0; n <= s.steps; ++n) s.at(0, n) = p.boundary[n];
  return s;
}

}  // namespace

EdgeSolution solve_nonlinear_first_order(const EdgeProblem& p) {
  p.validate();
  if (!p.retardation)
    throw std::invalid_argument("solve_nonlinear_first_order: no retardation model set");
  const RetardationModel& model = *p.retardation;
  const int I = p.space.cells();
  const int N = p.time.steps;
  const double tau = p.time.dt();

  EdgeSolution s = seed_nonlinear(p);
  for (int i = 1; i <= I; ++i) {
    const double h = p.space.h(i);
    s.flux[s.index(i, 0)] = model.value(s.at(i, 0));
    for (int n = 1; n <= N; ++n) {
      const double g = p.v(n) * tau / h;
      const double prev = s.at(i, n - 1);
      const double up = s.at(i - 1, n);
      NonlinearNodeEquation eq{&model, 0.0, g, model.value(prev) + g * up};
      const NodeBracket b = stencil_bracket(prev, up);
      const double q = solve_node_scalar(eq, b.lo, b.hi);
      s.at(i, n) = q;
      s.flux[s.index(i, n)] = model.value(q);
      s.limiter[s.index(i, n)] = 0.0;
    }
  }
  return s;
}

EdgeSolution solve_nonlinear_hr(const EdgeProblem& p, const SchemeConfig& cfg) {
  p.validate();
  cfg.validate();
  if (!p.retardation)
    throw std::invalid_argument("solve_nonlinear_hr: no retardation model set");
  const RetardationModel& model = *p.retardation;
  const int I = p.space.cells();
  const int N = p.time.steps;
  const double tau = p.time.dt();

  EdgeSolution s = seed_nonlinear(p);

  for (int i = 1; i <= I; ++i) {
    const double h = p.space.h(i);

    double psi_prev = 1.0;
    double flux_prev;  // Theta_i^{n-1/2}
    {
      const double q0 = s.at(i, 0);
      flux_prev = model.value(q0) + 0.5 * (model.value(s.at(i - 1, 1)) - model.value(q0));
      s.flux[s.index(i, 0)] = flux_prev;
    }

    for (int n = 1; n <= N; ++n) {
      const double vn = p.v(n);
      const double g = vn * tau / h;
      const double prev = s.at(i, n - 1);
      const double up = s.at(i - 1, n);
      const double th_prev = model.value(prev);
      const double th_up = model.value(up);
      const double rhs = flux_prev + g * up;
      const double num = th_up - th_prev;
      const NodeBracket b = stencil_bracket(prev, up);

      // The linear weight comes from the Courant number linearized at the
      // previous value, the only local value available before the predictor.
      const double c_lin = g / model.derivative(prev);
      auto limiter_courant = [&](double q_new, double q_ref) {
        return cfg.courant_min ? *cfg.courant_min
                               : nonlinear_courant(q_new, q_ref, tau, vn, h, model);
      };

      double q = 0.0, flux_new = 0.0, psi_new = 0.0;

      if (n == N) {
        const double c_lim = cfg.courant_min ? *cfg.courant_min : c_lin;
        const double phi = std::min(1.0, 2.0 * c_lim + psi_prev);
        NonlinearNodeEquation eq{&model, 0.0, g, rhs - 0.5 * phi * num};
        q = solve_node_scalar(eq, b.lo, b.hi);
        flux_new = model.value(q) + 0.5 * phi * num;
        psi_new = phi;
      } else {
        const double th_up_next = model.value(s.at(i - 1, n + 1));
        const double wbar = preferred_weight(c_lin);
        NonlinearNodeEquation predict{
            &model, 1.0 - wbar, g,
            rhs - 0.5 * (1.0 - wbar) * th_up_next - 0.5 * wbar * num};
        const double qp = solve_node_scalar(predict, b.lo, b.hi);
        const double th_p = model.value(qp);
        const double den = th_up_next - th_p;
        const double scale =
            std::max({1.0, std::fabs(th_up_next), std::fabs(th_up), std::fabs(th_prev)});

        if (std::fabs(den) <= cfg.denominator_tolerance * scale) {
          NonlinearNodeEquation eq{&model, 0.0, g, rhs};
          q = solve_node_scalar(eq, b.lo, b.hi);
          flux_new = model.value(q);
          psi_new = 0.0;
        } else {
          const double amp_p = 2.0 * limiter_courant(qp, up) + psi_prev;
          const LimiterEval eval = limiter_eval(num / den, wbar, amp_p);
          if (eval.middle) {
            q = qp;
            flux_new = th_p + 0.5 * eval.value * den;
            psi_new = eval.value;
          } else {
            double psi = eval.value;
            int rep = 0;
            s.corrected_nodes += 1;
            for (;;) {
              NonlinearNodeEquation correct{&model, psi, g, rhs - 0.5 * psi * th_up_next};
              const double qc = solve_node_scalar(correct, b.lo, b.hi);
              const double th_c = model.value(qc);
              const double den_c = th_up_next - th_c;
              const double amp_c = 2.0 * limiter_courant(qc, up) + psi_prev;
              if (theta_inequalities_hold(psi, num, den_c, amp_c)) {
                q = qc;
                flux_new = th_c + 0.5 * psi * den_c;
                psi_new = psi;
                break;
              }
              if (rep >= cfg.max_corrector_repeats ||
                  std::fabs(den_c) <= cfg.denominator_tolerance * scale) {
                NonlinearNodeEquation eq{&model, 0.0, g, rhs};
                q = solve_node_scalar(eq, b.lo, b.hi);
                flux_new = model.value(q);
                psi_new = 0.0;
                break;
              }
              rep += 1;
              s.repeated_nodes += 1;
              psi = limiter_eval(num / den_c, wbar, amp_c).value;
            }
            s.repeats[s.index(i, n)] = static_cast<unsigned char>(rep);
          }
        }
      }

      if (!std::isfinite(q)) throw std::logic_error("nonlinear solver: non-finite node value");
      s.at(i, n) = q;
      s.flux[s.index(i, n)] = flux_new;
      s.limiter[s.index(i, n)] = psi_new;
      flux_prev = flux_new;
      psi_prev = psi_new;
    }
  }
  return s;
}

}  // namespace netadv
