#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace netadv {

/**
 * Closed family of boundary/initial profiles used by the network file format.
 * A signal is a scalar function of one variable (time for boundaries, space
 * for initial profiles).
 */
struct Signal {
  enum class Kind { Constant, Sine, Gaussian, Impulse, Table };

  Kind kind = Kind::Constant;
  double c = 0.0;                  ///< constant value / impulse amplitude
  double amplitude = 1.0;          ///< sine amplitude
  double angular_frequency = 1.0;  ///< sine angular frequency
  double center = 0.0;             ///< gaussian center
  double width = 1.0;              ///< gaussian width (must be positive)
  double x0 = 0.0;                 ///< impulse initial position (at t = 0 the
                                   ///< bump sits at x0, upstream of the inlet)
  std::vector<std::pair<double, double>> table;  ///< (t, value), t increasing

  static Signal constant(double value) {
    Signal s;
    s.kind = Kind::Constant;
    s.c = value;
    return s;
  }
  static Signal sine(double amplitude, double angular_frequency) {
    Signal s;
    s.kind = Kind::Sine;
    s.amplitude = amplitude;
    s.angular_frequency = angular_frequency;
    return s;
  }
  static Signal gaussian(double center, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("Signal: gaussian width must be positive");
    Signal s;
    s.kind = Kind::Gaussian;
    s.center = center;
    s.width = width;
    return s;
  }
  static Signal impulse(double c, double x0) {
    Signal s;
    s.kind = Kind::Impulse;
    s.c = c;
    s.x0 = x0;
    return s;
  }
  static Signal from_table(std::vector<std::pair<double, double>> points) {
    if (points.empty()) throw std::invalid_argument("Signal: table must not be empty");
    for (std::size_t k = 1; k < points.size(); ++k)
      if (!(points[k].first > points[k - 1].first))
        throw std::invalid_argument("Signal: table abscissae must be strictly increasing");
    Signal s;
    s.kind = Kind::Table;
    s.table = std::move(points);
    return s;
  }

  double operator()(double u) const {
    switch (kind) {
      case Kind::Constant:
        return c;
      case Kind::Sine:
        return amplitude * std::sin(angular_frequency * u);
      case Kind::Gaussian: {
        const double z = (u - center) / width;
        return std::exp(-z * z);
      }
      case Kind::Impulse: {
        // Value at the inlet of a bump travelling with speed 0.3 on a
        // threefold-stretched axis: exp(-2 (3(x - 0.3 u) - x0)^10) at x = 0.
        const double z = -0.9 * u - x0;
        const double z2 = z * z;
        const double z10 = z2 * z2 * z2 * z2 * z2;
        return c * std::exp(-2.0 * z10);
      }
      case Kind::Table: {
        if (u <= table.front().first) return table.front().second;
        if (u >= table.back().first) return table.back().second;
        std::size_t k = 1;
        while (table[k].first < u) ++k;
        const auto& [t0, y0] = table[k - 1];
        const auto& [t1, y1] = table[k];
        return y0 + (y1 - y0) * (u - t0) / (t1 - t0);
      }
    }
    throw std::logic_error("Signal: unknown kind");
  }

  friend bool operator==(const Signal& a, const Signal& b) {
    return a.kind == b.kind && a.c == b.c && a.amplitude == b.amplitude &&
           a.angular_frequency == b.angular_frequency && a.center == b.center &&
           a.width == b.width && a.x0 == b.x0 && a.table == b.table;
  }
};

}  // namespace netadv
