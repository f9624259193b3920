#include "netadv/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace netadv {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x))
    throw std::invalid_argument(std::string("kernels: ") + what + " must be finite");
}

}  // namespace

double courant_number(double v, double tau, double kappa, double h) {
  require_finite(v, "speed");
  require_finite(tau, "time step");
  require_finite(kappa, "capacity");
  require_finite(h, "space step");
  if (!(v > 0.0 && tau > 0.0 && kappa > 0.0 && h > 0.0))
    throw std::domain_error("courant_number: all inputs must be positive");
  return v * tau / (kappa * h);
}

double preferred_weight(double courant) {
  require_finite(courant, "Courant number");
  if (!(courant > 0.0)) throw std::domain_error("preferred_weight: Courant number must be positive");
  if (courant < 0.25) return 1.0;
  return (2.0 + 1.0 / courant) / 6.0;
}

LimiterEval limiter_eval(double r, double wbar, double amp) {
  require_finite(r, "limiter ratio");
  require_finite(wbar, "linear weight");
  require_finite(amp, "amplification");
  const double steep = amp * r;
  const double middle = 1.0 - wbar + wbar * r;
  LimiterEval out;
  out.middle = (middle <= steep) && (middle <= 2.0) && (middle >= 0.0);
  out.value = std::max(0.0, std::min({steep, middle, 2.0}));
  return out;
}

double limiter_value(double r, double wbar, double courant, double psi_prev) {
  require_finite(psi_prev, "limiter history");
  if (!(courant > 0.0)) throw std::domain_error("limiter_value: Courant number must be positive");
  return limiter_eval(r, wbar, 2.0 * courant + psi_prev).value;
}

double weno_weight_from_limiter(double r, double wbar, double courant, double psi_prev) {
  require_finite(r, "limiter ratio");
  require_finite(wbar, "linear weight");
  require_finite(psi_prev, "limiter history");
  if (!(courant > 0.0))
    throw std::domain_error("weno_weight_from_limiter: Courant number must be positive");
  if (r <= 0.0) return 1.0 / (1.0 - r);
  if (r == 1.0) return wbar;
  const double amp = 2.0 * courant + psi_prev;
  const double steep = amp * r;
  const double middle = 1.0 - wbar + wbar * r;
  if (steep >= 2.0 && middle >= 2.0) return 1.0 / (r - 1.0);
  if (middle <= steep) return wbar;
  return (1.0 - amp * r) / (1.0 - r);
}

double weno_heuristic_weight(double delta_a, double delta_b, double wbar, double eps) {
  require_finite(delta_a, "first difference");
  require_finite(delta_b, "second difference");
  require_finite(wbar, "linear weight");
  if (!(eps > 0.0)) throw std::domain_error("weno_heuristic_weight: eps must be positive");
  const double num = eps + delta_a * delta_a;
  const double den = eps + delta_b * delta_b;
  const double ratio = (num / den) * (num / den);
  return wbar / (wbar + (1.0 - wbar) * ratio);
}

}  // namespace netadv
