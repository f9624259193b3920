#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace netadv {

/** Uniform partition of [0,T] into N steps of size tau = T/N. */
struct TimeGrid {
  double horizon = 1.0;
  int steps = 1;

  TimeGrid() = default;
  TimeGrid(double T, int N) : horizon(T), steps(N) {
    if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be positive");
    if (N < 1) throw std::invalid_argument("TimeGrid: need at least one step");
  }

  double dt() const { return horizon / steps; }
  double time(int n) const { return n * dt(); }
};

/** Possibly non-uniform spatial grid 0 = x_0 < x_1 < ... < x_I = L. */
struct SpaceGrid {
  std::vector<double> nodes;

  static SpaceGrid uniform(double length, int cells) {
    if (!(length > 0.0)) throw std::invalid_argument("SpaceGrid: length must be positive");
    if (cells < 1) throw std::invalid_argument("SpaceGrid: need at least one cell");
    SpaceGrid g;
    g.nodes.resize(cells + 1);
    for (int i = 0; i <= cells; ++i) g.nodes[i] = length * i / cells;
    return g;
  }

  int cells() const { return static_cast<int>(nodes.size()) - 1; }
  double h(int i) const { return nodes[i] - nodes[i - 1]; }
  double x(int i) const { return nodes[i]; }
  double length() const { return nodes.back(); }

  void validate() const {
    if (nodes.size() < 2) throw std::invalid_argument("SpaceGrid: need at least two nodes");
    if (nodes.front() != 0.0) throw std::invalid_argument("SpaceGrid: first node must be 0");
    for (std::size_t i = 1; i < nodes.size(); ++i)
      if (!(nodes[i] > nodes[i - 1]))
        throw std::invalid_argument("SpaceGrid: nodes must be strictly increasing");
  }
};

enum class SchemeVariant {
  FirstOrder,       ///< implicit upwind, unconditionally DMP
  FixedWeight,      ///< compact inverse scheme with a fixed linear weight
  ThirdOrder,       ///< fixed weight chosen from the local Courant number
  WenoHeuristic,    ///< smoothness-weighted blend applied after the prediction
  HighResolution,   ///< limiter-based predictor-corrector, bound preserving
  DirectHR          ///< time-marching predictor-corrector (for comparison)
};

struct SchemeConfig {
  SchemeVariant variant = SchemeVariant::HighResolution;
  double fixed_weight = 1.0 / 3.0;          ///< used by FixedWeight
  double weno_epsilon = 1e-6;
  std::optional<double> weno_threshold;     ///< blend only where |predicted| < threshold
  int max_corrector_repeats = 1;
  double denominator_tolerance = 1e-14;     ///< relative; degenerate limiter ratio cutoff
  std::optional<double> courant_min;        ///< nonlinear runs: global lower Courant bound

  void validate() const {
    if (!(fixed_weight >= 0.0 && fixed_weight <= 1.0))
      throw std::invalid_argument("SchemeConfig: fixed_weight must be in [0,1]");
    if (max_corrector_repeats < 0)
      throw std::invalid_argument("SchemeConfig: max_corrector_repeats must be >= 0");
    if (!(weno_epsilon > 0.0))
      throw std::invalid_argument("SchemeConfig: weno_epsilon must be positive");
    if (!(denominator_tolerance > 0.0))
      throw std::invalid_argument("SchemeConfig: denominator_tolerance must be positive");
  }
};

}  // namespace netadv
