#pragma once

namespace netadv {

/** Local Courant number C = v*tau/(kappa*h). All inputs must be positive. */
double courant_number(double v, double tau, double kappa, double h);

/**
 * Linear weight giving third-order accuracy for constant coefficients,
 * wbar = (2 + 1/C)/6, falling back to 1 for too small Courant numbers C < 1/4.
 * Continuous at C = 1/4.
 */
double preferred_weight(double courant);

/** Result of a limiter evaluation; `middle` marks the linear-weight branch. */
struct LimiterEval {
  double value = 0.0;
  bool middle = false;
};

/**
 * Limiter Psi(r) = max{0, min{amp*r, 1 - wbar + wbar*r, 2}} with a general
 * amplification factor `amp` (2C + Psi_prev for the inverse scheme,
 * 2/C + Phi_prev for the direct one). The `middle` flag is decided by the
 * same comparisons that pick the minimum, so an accepted middle branch is
 * exact, not tolerance-based.
 */
LimiterEval limiter_eval(double r, double wbar, double amp);

/** Courant-dependent limiter of the inverse scheme; amp = 2C + psi_prev. */
double limiter_value(double r, double wbar, double courant, double psi_prev);

/**
 * The solution-dependent weight w(r) equivalent to limiter_value through
 * Psi = 1 - w + w*r. Returns wbar at r = 1 where both forms agree.
 */
double weno_weight_from_limiter(double r, double wbar, double courant, double psi_prev);

/**
 * Heuristic smoothness weight: r = ((eps + dA^2)/(eps + dB^2))^2 and
 * w = wbar/(wbar + (1 - wbar) r). Always in (0,1); equals wbar when dA = dB.
 */
double weno_heuristic_weight(double delta_a, double delta_b, double wbar, double eps);

}  // namespace netadv
