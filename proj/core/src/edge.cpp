#include "netadv/edge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "netadv/kernels.hpp"
#include "netadv/nonlinear.hpp"

namespace netadv {

void EdgeProblem::validate() const {
  space.validate();
  const std::size_t N = static_cast<std::size_t>(time.steps);
  const std::size_t I = static_cast<std::size_t>(space.cells());
  if (velocity.empty() || (velocity.size() != 1 && velocity.size() != N + 1))
    throw std::invalid_argument("EdgeProblem: velocity needs 1 or N+1 samples");
  for (double vn : velocity)
    if (!(vn > 0.0) || !std::isfinite(vn))
      throw std::invalid_argument("EdgeProblem: velocities must be positive and finite");
  if (!retardation && !(capacity > 0.0))
    throw std::invalid_argument("EdgeProblem: capacity must be positive");
  if (boundary.size() != N + 1)
    throw std::invalid_argument("EdgeProblem: boundary column needs N+1 samples");
  if (initial.size() != I + 1)
    throw std::invalid_argument("EdgeProblem: initial row needs I+1 samples");
  for (double q : boundary)
    if (!std::isfinite(q)) throw std::invalid_argument("EdgeProblem: non-finite boundary value");
  for (double q : initial)
    if (!std::isfinite(q)) throw std::invalid_argument("EdgeProblem: non-finite initial value");
}

namespace {

void check_divisor(double divisor, double courant) {
  // Every per-node divisor must stay >= min(C, 1/2).
  if (!(divisor >= std::min(courant, 0.5) - 1e-12))
    throw std::logic_error("edge solver: non-positive node divisor");
}

EdgeSolution seed_solution(const EdgeProblem& p) {
  EdgeSolution s(p.space.cells(), p.time.steps);
  for (int i = 0; i <= s.cells; ++i) s.at(i, 0) = p.initial[i];
  for (int n = 0; n <= s.steps; ++n) s.at(0, n) = p.boundary[n];
  return s;
}

double stencil_scale(double a, double b, double c, double d) {
  return std::max({1.0, std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d)});
}

/**
 * Checks the coefficient inequalities 0 <= psi/r <= amp for the applied
 * limiter value `psi` against the ratio r = num/den, without dividing.
 * den == 0 means r is infinite and psi/r = 0, which is admissible.
 */
bool limiter_inequalities_hold(double psi, double num, double den, double amp) {
  if (psi == 0.0) return true;
  if (den == 0.0) return true;
  if (num == 0.0) return false;       // psi/r unbounded
  if (num * den < 0.0) return false;  // psi/r < 0
  return psi * std::fabs(den) <= amp * std::fabs(num);
}

enum class InverseKind { FirstOrder, FixedWeight, ThirdOrder, WenoHeuristic, HighResolution };

EdgeSolution solve_inverse(const EdgeProblem& p, InverseKind kind, double fixed_w,
                           const SchemeConfig& cfg) {
  p.validate();
  cfg.validate();
  const int I = p.space.cells();
  const int N = p.time.steps;
  const double tau = p.time.dt();
  const double kappa = p.capacity;

  EdgeSolution s = seed_solution(p);

  for (int i = 1; i <= I; ++i) {
    const double h = p.space.h(i);

    // Flux representative at the initial half level, Theta_i^{1/2}.
    // Ghost level convention: Q_i^{-1} = Q_i^0.
    double fd_prev = 0.0;  // flux deviation Theta/kappa - Q
    double psi_prev = 1.0;
    {
      const double q0 = s.at(i, 0);
      const double up1 = s.at(i - 1, 1);
      const double up0 = s.at(i - 1, 0);
      switch (kind) {
        case InverseKind::FirstOrder:
          fd_prev = 0.0;
          break;
        case InverseKind::FixedWeight:
          fd_prev = 0.5 * (1.0 - fixed_w) * (up1 - q0) + 0.5 * fixed_w * (up0 - q0);
          break;
        case InverseKind::ThirdOrder:
        case InverseKind::WenoHeuristic: {
          const double w0 = preferred_weight(courant_number(p.v(0), tau, kappa, h));
          fd_prev = 0.5 * (1.0 - w0) * (up1 - q0) + 0.5 * w0 * (up0 - q0);
          break;
        }
        case InverseKind::HighResolution:
          fd_prev = 0.5 * (up1 - q0);  // limiter history seeded with Psi = 1
          break;
      }
      s.flux[s.index(i, 0)] = kappa * (q0 + fd_prev);
    }

    for (int n = 1; n <= N; ++n) {
      const double C = courant_number(p.v(n), tau, kappa, h);
      const double prev = s.at(i, n - 1);
      const double up = s.at(i - 1, n);
      const double rhs = prev + fd_prev + C * up;
      const double num = up - prev;

      double q = 0.0, fd_new = 0.0, psi_new = 1.0;

      auto solve_with_weight = [&](double w, double up_next) {
        const double div = 1.0 + C - 0.5 * (1.0 - w);
        check_divisor(div, C);
        const double val = (rhs - 0.5 * (1.0 - w) * up_next - 0.5 * w * num) / div;
        return val;
      };

      switch (kind) {
        case InverseKind::FirstOrder: {
          q = rhs / (1.0 + C);
          fd_new = 0.0;
          break;
        }
        case InverseKind::FixedWeight:
        case InverseKind::ThirdOrder:
        case InverseKind::WenoHeuristic: {
          double w = (kind == InverseKind::FixedWeight) ? fixed_w : preferred_weight(C);
          if (n == N) w = 1.0;  // no future value at the horizon; reduced stencil
          const double up_next = (n == N) ? 0.0 : s.at(i - 1, n + 1);
          q = solve_with_weight(w, up_next);
          if (kind == InverseKind::WenoHeuristic && n < N) {
            const bool blend =
                !cfg.weno_threshold || std::fabs(q) < *cfg.weno_threshold;
            if (blend) {
              const double wbar = w;
              const double da = up_next - q;
              const double ww = weno_heuristic_weight(da, num, wbar, cfg.weno_epsilon);
              q = solve_with_weight(ww, up_next);
              w = ww;
            }
          }
          fd_new = 0.5 * (1.0 - w) * (((n == N) ? 0.0 : s.at(i - 1, n + 1)) - q) + 0.5 * w * num;
          if (n == N) fd_new = 0.5 * num;  // w = 1 form
          psi_new = std::clamp(w, 0.0, 2.0);
          break;
        }
        case InverseKind::HighResolution: {
          if (n == N) {
            // Horizon closure: the limiter targets the w = 1 stencil, so the
            // flux deviation is (phi/2)*num with phi capped by the right
            // coefficient inequality.
            const double phi = std::min(1.0, 2.0 * C + psi_prev);
            q = (rhs - 0.5 * phi * num) / (1.0 + C);
            fd_new = 0.5 * phi * num;
            psi_new = phi;
            break;
          }
          const double up_next = s.at(i - 1, n + 1);
          const double wbar = preferred_weight(C);
          const double qp = solve_with_weight(wbar, up_next);
          const double den = up_next - qp;
          const double scale = stencil_scale(up_next, up, prev, qp);
          const double amp = 2.0 * C + psi_prev;
          if (std::fabs(den) <= cfg.denominator_tolerance * scale) {
            // Degenerate ratio: first-order fallback keeps the bounds.
            q = rhs / (1.0 + C);
            fd_new = 0.0;
            psi_new = 0.0;
            break;
          }
          const LimiterEval eval = limiter_eval(num / den, wbar, amp);
          if (eval.middle) {
            q = qp;
            fd_new = 0.5 * eval.value * den;
            psi_new = eval.value;
            break;
          }
          double psi = eval.value;
          int rep = 0;
          s.corrected_nodes += 1;
          for (;;) {
            const double div = 1.0 + C - 0.5 * psi;
            check_divisor(div, C);
            const double qc = (rhs - 0.5 * psi * up_next) / div;
            const double den_c = up_next - qc;
            if (limiter_inequalities_hold(psi, num, den_c, amp)) {
              q = qc;
              fd_new = 0.5 * psi * den_c;
              psi_new = psi;
              break;
            }
            if (rep >= cfg.max_corrector_repeats ||
                std::fabs(den_c) <= cfg.denominator_tolerance * scale) {
              q = rhs / (1.0 + C);
              fd_new = 0.0;
              psi_new = 0.0;
              break;
            }
            rep += 1;
            s.repeated_nodes += 1;
            psi = limiter_eval(num / den_c, wbar, amp).value;
          }
          s.repeats[s.index(i, n)] = static_cast<unsigned char>(rep);
          break;
        }
      }

      if (!std::isfinite(q)) throw std::logic_error("edge solver: non-finite node value");
      s.at(i, n) = q;
      s.flux[s.index(i, n)] = kappa * (q + fd_new);
      s.limiter[s.index(i, n)] = psi_new;
      fd_prev = fd_new;
      psi_prev = psi_new;
    }
  }
  return s;
}

double constant_courant(const EdgeProblem& p) {
  const double tau = p.time.dt();
  const double c0 = courant_number(p.v(1), tau, p.capacity, p.space.h(1));
  for (int n = 1; n <= p.time.steps; ++n)
    for (int i = 1; i <= p.space.cells(); ++i) {
      const double c = courant_number(p.v(n), tau, p.capacity, p.space.h(i));
      if (std::fabs(c - c0) > 1e-12 * c0)
        throw std::invalid_argument("direct scheme: requires a constant Courant number");
    }
  return c0;
}

double direct_weight(double courant) {
  return std::min(1.0, (2.0 + courant) / 6.0);
}

EdgeSolution solve_direct(const EdgeProblem& p, bool limited, double fixed_w,
                          const SchemeConfig& cfg) {
  p.validate();
  cfg.validate();
  const double C = constant_courant(p);
  const int I = p.space.cells();
  const int N = p.time.steps;
  EdgeSolution s = seed_solution(p);
  s.staggering = FluxStaggering::Space;

  const double wbar = limited ? direct_weight(C) : fixed_w;

  for (int n = 1; n <= N; ++n) {
    // Interface flux downstream of the boundary node; central two-point form.
    double g_prev = s.at(0, n) + 0.5 * (s.at(1, n - 1) - s.at(0, n));
    s.flux[s.index(0, n)] = g_prev;
    double phi_prev = 1.0;

    for (int i = 1; i <= I; ++i) {
      const double prev = s.at(i, n - 1);
      const double rhs = prev + C * g_prev;
      const double num = prev - s.at(i - 1, n);
      double q = 0.0, g_new = 0.0, phi_new = 1.0;

      if (i == I) {
        const double phi = limited ? std::min(1.0, 2.0 / C + phi_prev) : 1.0;
        q = (rhs - C * 0.5 * phi * num) / (1.0 + C);
        g_new = q + 0.5 * phi * num;
        phi_new = phi;
      } else if (!limited) {
        const double dn_next = s.at(i + 1, n - 1);
        const double div = 1.0 + C * (1.0 + fixed_w) / 2.0;
        q = (rhs - C * (0.5 * (1.0 - fixed_w) * dn_next + 0.5 * fixed_w * num)) / div;
        g_new = q + 0.5 * (1.0 - fixed_w) * (dn_next - q) + 0.5 * fixed_w * num;
        phi_new = fixed_w;
      } else {
        const double dn_next = s.at(i + 1, n - 1);
        const double div_p = 1.0 + C * (1.0 + wbar) / 2.0;
        const double qp = (rhs - C * (0.5 * (1.0 - wbar) * dn_next + 0.5 * wbar * num)) / div_p;
        const double den = dn_next - qp;
        const double scale = stencil_scale(dn_next, s.at(i - 1, n), prev, qp);
        const double a = 2.0 / C + phi_prev;
        if (std::fabs(den) <= cfg.denominator_tolerance * scale) {
          q = rhs / (1.0 + C);
          g_new = q;
          phi_new = 0.0;
        } else {
          const LimiterEval eval = limiter_eval(num / den, wbar, a);
          if (eval.middle) {
            q = qp;
            g_new = q + 0.5 * eval.value * den;
            phi_new = eval.value;
          } else {
            double phi = eval.value;
            int rep = 0;
            s.corrected_nodes += 1;
            for (;;) {
              const double div = 1.0 + C * (1.0 - 0.5 * phi);
              const double qc = (rhs - C * 0.5 * phi * dn_next) / div;
              const double den_c = dn_next - qc;
              if (limiter_inequalities_hold(phi, num, den_c, a)) {
                q = qc;
                g_new = q + 0.5 * phi * den_c;
                phi_new = phi;
                break;
              }
              if (rep >= cfg.max_corrector_repeats ||
                  std::fabs(den_c) <= cfg.denominator_tolerance * scale) {
                q = rhs / (1.0 + C);
                g_new = q;
                phi_new = 0.0;
                break;
              }
              rep += 1;
              s.repeated_nodes += 1;
              phi = limiter_eval(num / den_c, wbar, a).value;
            }
            s.repeats[s.index(i, n)] = static_cast<unsigned char>(rep);
          }
        }
      }

      if (!std::isfinite(q)) throw std::logic_error("direct solver: non-finite node value");
      s.at(i, n) = q;
      s.flux[s.index(i, n)] = g_new;
      s.limiter[s.index(i, n)] = phi_new;
      g_prev = g_new;
      phi_prev = phi_new;
    }
  }
  return s;
}

}  // namespace

double predict_node(const NodeStencil& s, double courant, double wbar, double psi_prev) {
  const double rhs =
      s.previous + 0.5 * psi_prev * (s.upstream - s.previous) + courant * s.upstream;
  const double div = 1.0 + courant - 0.5 * (1.0 - wbar);
  check_divisor(div, courant);
  return (rhs - 0.5 * (1.0 - wbar) * s.upstream_next -
          0.5 * wbar * (s.upstream - s.previous)) /
         div;
}

double correct_node(const NodeStencil& s, double courant, double psi, double psi_prev) {
  const double rhs =
      s.previous + 0.5 * psi_prev * (s.upstream - s.previous) + courant * s.upstream;
  const double div = 1.0 + courant - 0.5 * psi;
  check_divisor(div, courant);
  return (rhs - 0.5 * psi * s.upstream_next) / div;
}

EdgeSolution solve_first_order(const EdgeProblem& p) {
  return solve_inverse(p, InverseKind::FirstOrder, 0.0, SchemeConfig{});
}

EdgeSolution solve_fixed_weight(const EdgeProblem& p, double weight) {
  if (!(weight >= 0.0 && weight <= 1.0))
    throw std::invalid_argument("solve_fixed_weight: weight must be in [0,1]");
  return solve_inverse(p, InverseKind::FixedWeight, weight, SchemeConfig{});
}

EdgeSolution solve_third_order(const EdgeProblem& p) {
  return solve_inverse(p, InverseKind::ThirdOrder, 0.0, SchemeConfig{});
}

EdgeSolution solve_high_resolution(const EdgeProblem& p, const SchemeConfig& cfg) {
  return solve_inverse(p, InverseKind::HighResolution, 0.0, cfg);
}

EdgeSolution solve_weno_heuristic(const EdgeProblem& p, const SchemeConfig& cfg) {
  return solve_inverse(p, InverseKind::WenoHeuristic, 0.0, cfg);
}

EdgeSolution solve_direct_hr(const EdgeProblem& p, const SchemeConfig& cfg) {
  return solve_direct(p, true, 0.0, cfg);
}

EdgeSolution solve_direct_fixed(const EdgeProblem& p, double weight) {
  if (!(weight >= 0.0 && weight <= 1.0))
    throw std::invalid_argument("solve_direct_fixed: weight must be in [0,1]");
  return solve_direct(p, false, weight, SchemeConfig{});
}

EdgeSolution solve_edge(const EdgeProblem& p, const SchemeConfig& cfg) {
  if (p.retardation) {
    switch (cfg.variant) {
      case SchemeVariant::FirstOrder:
        return solve_nonlinear_first_order(p);
      case SchemeVariant::HighResolution:
        return solve_nonlinear_hr(p, cfg);
      default:
        throw std::invalid_argument(
            "solve_edge: retardation models support only the first-order and "
            "high-resolution variants");
    }
  }
  switch (cfg.variant) {
    case SchemeVariant::FirstOrder:
      return solve_first_order(p);
    case SchemeVariant::FixedWeight:
      return solve_fixed_weight(p, cfg.fixed_weight);
    case SchemeVariant::ThirdOrder:
      return solve_third_order(p);
    case SchemeVariant::WenoHeuristic:
      return solve_weno_heuristic(p, cfg);
    case SchemeVariant::HighResolution:
      return solve_high_resolution(p, cfg);
    case SchemeVariant::DirectHR:
      return solve_direct_hr(p, cfg);
  }
  throw std::invalid_argument("solve_edge: unknown scheme variant");
}

std::vector<DmpViolation> dmp_check(const EdgeSolution& s) {
  std::vector<DmpViolation> out;
  for (int i = 1; i <= s.cells; ++i)
    for (int n = 1; n <= s.steps; ++n) {
      const double prev = s.at(i, n - 1);
      const double up = s.at(i - 1, n);
      const double q = s.at(i, n);
      const double lo = std::min(prev, up);
      const double hi = std::max(prev, up);
      const double tol = 1e-13 * std::max({std::fabs(lo), std::fabs(hi), std::fabs(q)});
      if (q < lo - tol)
        out.push_back({i, n, lo - q});
      else if (q > hi + tol)
        out.push_back({i, n, q - hi});
    }
  return out;
}

ConservationAudit conservation_audit(const EdgeSolution& s, const EdgeProblem& p) {
  ConservationAudit a;
  const double tau = p.time.dt();
  if (s.staggering == FluxStaggering::Time) {
    for (int i = 1; i <= s.cells; ++i) {
      const double h = p.space.h(i);
      a.stored += h * s.flux[s.index(i, s.steps)];
      a.initial += h * s.flux[s.index(i, 0)];
    }
    for (int n = 1; n <= s.steps; ++n) {
      a.inflow += tau * p.v(n) * s.at(0, n);
      a.outflow += tau * p.v(n) * s.at(s.cells, n);
    }
  } else {
    const double kappa = p.capacity;
    for (int i = 1; i <= s.cells; ++i) {
      const double h = p.space.h(i);
      a.stored += h * kappa * s.at(i, s.steps);
      a.initial += h * kappa * s.at(i, 0);
    }
    for (int n = 1; n <= s.steps; ++n) {
      a.inflow += tau * p.v(n) * s.flux[s.index(0, n)];
      a.outflow += tau * p.v(n) * s.flux[s.index(s.cells, n)];
    }
  }
  a.residual = a.stored - a.initial - a.inflow + a.outflow;
  a.throughput =
      std::fabs(a.inflow) + std::fabs(a.outflow) + std::fabs(a.initial) + std::fabs(a.stored);
  return a;
}

}  // namespace netadv
