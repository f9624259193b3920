#pragma once

#include <memory>
#include <stdexcept>

namespace netadv {

/**
 * Stored-quantity function theta(q) with theta'(q) >= kappa_min > 0, so each
 * per-node algebraic equation stays strictly monotone.
 */
class RetardationModel {
 public:
  virtual ~RetardationModel() = default;
  virtual double value(double q) const = 0;
  virtual double derivative(double q) const = 0;
  virtual double min_derivative() const = 0;

  /** theta(q) = kappa*q. */
  static std::shared_ptr<const RetardationModel> linear(double kappa);
  /** theta(q) = a*q + b*q^2 with a > 0, b >= 0 (monotone for q >= 0). */
  static std::shared_ptr<const RetardationModel> quadratic(double a, double b);
};

class LinearRetardation final : public RetardationModel {
 public:
  explicit LinearRetardation(double kappa) : kappa_(kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("LinearRetardation: kappa must be positive");
  }
  double value(double q) const override { return kappa_ * q; }
  double derivative(double) const override { return kappa_; }
  double min_derivative() const override { return kappa_; }
  double kappa() const { return kappa_; }

 private:
  double kappa_;
};

class QuadraticRetardation final : public RetardationModel {
 public:
  QuadraticRetardation(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0)) throw std::invalid_argument("QuadraticRetardation: linear coefficient must be positive");
    if (b < 0.0) throw std::invalid_argument("QuadraticRetardation: quadratic coefficient must be non-negative");
  }
  double value(double q) const override { return a_ * q + b_ * q * q; }
  double derivative(double q) const override { return a_ + 2.0 * b_ * q; }
  double min_derivative() const override { return a_; }
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_, b_;
};

inline std::shared_ptr<const RetardationModel> RetardationModel::linear(double kappa) {
  return std::make_shared<LinearRetardation>(kappa);
}

inline std::shared_ptr<const RetardationModel> RetardationModel::quadratic(double a, double b) {
  return std::make_shared<QuadraticRetardation>(a, b);
}

}  // namespace netadv
