#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "netadv/nonlinear.hpp"
#include "netadv/scenarios.hpp"

using namespace netadv;

namespace {

EdgeProblem nonlinear_problem(int I, int N) {
  return scenario_nonlinear_isotherm(I, N).problem;
}

}  // namespace

TEST_CASE("mean-value Courant number") {
  const auto model = RetardationModel::quadratic(0.9, 0.1);
  // Mean-value form: (q - q') / (theta(q) - theta(q')) * g.
  // theta(1) = 1, theta(0) = 0, g = 2 -> C = 2.
  CHECK(nonlinear_courant(1.0, 0.0, 1.0, 2.0, 1.0, *model) == doctest::Approx(2.0).epsilon(1e-15));
  // theta(2) = 2.2, theta(1) = 1 -> C = g/1.2.
  CHECK(nonlinear_courant(2.0, 1.0, 0.5, 1.0, 0.25, *model) ==
        doctest::Approx(2.0 / 1.2).epsilon(1e-14));
  // Coinciding values fall back to the derivative: theta'(1) = 1.1.
  CHECK(nonlinear_courant(1.0, 1.0, 1.0, 1.0, 1.0, *model) ==
        doctest::Approx(1.0 / 1.1).epsilon(1e-14));
  // A linear model reduces to the usual ratio g/kappa.
  const auto lin = RetardationModel::linear(2.0);
  CHECK(nonlinear_courant(0.3, 0.7, 1.0, 4.0, 1.0, *lin) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("scalar node equation solved to rounding accuracy") {
  const auto model = RetardationModel::quadratic(0.9, 0.1);
  SUBCASE("quadratic-formula oracle") {
    // (0.9 q + 0.1 q^2) + q = 1.9, so 0.1 q^2 + 1.9 q - 1.9 = 0 and the
    // positive root is (-19 + sqrt(437))/2.
    NonlinearNodeEquation eq{model.get(), 0.0, 1.0, 1.9};
    const double expect = 0.5 * (-19.0 + std::sqrt(437.0));
    CHECK(solve_node_scalar(eq, 0.0, 1.0) == doctest::Approx(expect).epsilon(1e-14));
  }
  SUBCASE("zero right-hand side gives the zero root") {
    NonlinearNodeEquation eq{model.get(), 1.0, 2.0, 0.0};
    CHECK(std::fabs(solve_node_scalar(eq, 0.0, 1.0)) < 1e-14);
  }
  SUBCASE("root far outside the initial bracket is still found by widening") {
    NonlinearNodeEquation eq{model.get(), 0.0, 1.0, 190.0};
    const double q = solve_node_scalar(eq, 0.0, 1.0);
    CHECK(std::fabs(eq.eval(q)) < 1e-9 * 190.0);
  }
  SUBCASE("a root beyond the widening range is reported, not silently truncated") {
    NonlinearNodeEquation eq{model.get(), 0.0, 1.0, 1e6};
    CHECK_THROWS_AS(solve_node_scalar(eq, 0.0, 1.0), std::runtime_error);
  }
  SUBCASE("psi above two makes the equation non-monotone and is rejected") {
    NonlinearNodeEquation eq{model.get(), 2.5, 1.0, 1.0};
    CHECK_THROWS_AS(solve_node_scalar(eq, 0.0, 1.0), std::invalid_argument);
  }
  SUBCASE("non-positive g is rejected") {
    NonlinearNodeEquation eq{model.get(), 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(solve_node_scalar(eq, 0.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("linear retardation model reproduces the linear solvers") {
  // With theta(q) = kappa*q the nonlinear path must agree with the closed
  // forms to near machine precision, including the limiter decisions.
  const int I = 40, N = 20;
  EdgeProblem lin;
  lin.time = TimeGrid(2.0, N);
  lin.space = SpaceGrid::uniform(3.0, I);
  lin.capacity = 2.0;
  lin.velocity = {1.5};
  lin.boundary.resize(N + 1);
  lin.initial.resize(I + 1);
  for (int n = 0; n <= N; ++n) lin.boundary[n] = four_shape_initial(0.6 - lin.time.time(n));
  for (int i = 0; i <= I; ++i) lin.initial[i] = 0.0;
  lin.initial[0] = lin.boundary[0];

  EdgeProblem wrapped = lin;
  wrapped.retardation = RetardationModel::linear(2.0);

  SUBCASE("first order") {
    const EdgeSolution a = solve_first_order(lin);
    const EdgeSolution b = solve_nonlinear_first_order(wrapped);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
      worst = std::max(worst, std::fabs(a.values[k] - b.values[k]));
    CHECK(worst <= 1e-12);
  }
  SUBCASE("high resolution") {
    const EdgeSolution a = solve_high_resolution(lin);
    const EdgeSolution b = solve_nonlinear_hr(wrapped);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
      worst = std::max(worst, std::fabs(a.values[k] - b.values[k]));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("constant inflow stays constant and bounded") {
  const int I = 20, N = 10;
  EdgeProblem p;
  p.time = TimeGrid(1.0, N);
  p.space = SpaceGrid::uniform(2.0, I);
  p.retardation = RetardationModel::quadratic(0.9, 0.1);
  p.velocity = {1.0};
  p.boundary.assign(N + 1, 0.7);
  p.initial.assign(I + 1, 0.7);
  for (const EdgeSolution& s : {solve_nonlinear_first_order(p), solve_nonlinear_hr(p)})
    for (double q : s.values) CHECK(q == doctest::Approx(0.7).epsilon(1e-13));
}

TEST_CASE("quadratic isotherm benchmark stays in the data bounds") {
  EdgeProblem p = nonlinear_problem(400, 50);
  const double lo = *std::min_element(p.boundary.begin(), p.boundary.end());
  const double hi = *std::max_element(p.boundary.begin(), p.boundary.end());
  CHECK(lo == 0.0);
  CHECK(hi <= 1.0);

  SUBCASE("first order") {
    const EdgeSolution s = solve_nonlinear_first_order(p);
    const auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
    CHECK(*mn >= -1e-12);
    CHECK(*mx <= hi + 1e-12);
  }
  SUBCASE("high resolution with the global Courant floor") {
    SchemeConfig cfg;
    cfg.courant_min = 40.0 / 11.0;
    const EdgeSolution s = solve_nonlinear_hr(p, cfg);
    const auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
    CHECK(*mn >= -1e-12);
    CHECK(*mx <= hi + 1e-12);
    CHECK(dmp_check(s).empty());
    const ConservationAudit a = conservation_audit(s, p);
    CHECK(std::fabs(a.residual) <= 1e-10 * a.throughput);
  }
}

TEST_CASE("retarded front travels slower than the linear one") {
  // theta' > kappa means more storage per concentration, so the nonlinear
  // front lags behind the linear front with the same velocity.
  const int I = 100, N = 50;
  EdgeProblem p;
  p.time = TimeGrid(1.0, N);
  p.space = SpaceGrid::uniform(2.0, I);
  p.velocity = {1.0};
  p.boundary.assign(N + 1, 1.0);
  p.boundary[0] = 0.0;
  p.initial.assign(I + 1, 0.0);

  EdgeProblem retarded = p;
  retarded.retardation = RetardationModel::quadratic(1.0, 0.5);

  const EdgeSolution a = solve_high_resolution(p);
  const EdgeSolution b = solve_nonlinear_hr(retarded);
  double mass_lin = 0.0, mass_ret = 0.0;
  for (int i = 1; i <= I; ++i) {
    mass_lin += a.at(i, N);
    mass_ret += b.at(i, N);
  }
  CHECK(mass_ret < mass_lin);
}

TEST_CASE("dispatch routes retarded problems through the nonlinear path") {
  EdgeProblem p = nonlinear_problem(50, 25);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::ThirdOrder;
  CHECK_THROWS_AS(solve_edge(p, cfg), std::invalid_argument);
  cfg.variant = SchemeVariant::FirstOrder;
  CHECK_NOTHROW(solve_edge(p, cfg));
  cfg.variant = SchemeVariant::HighResolution;
  CHECK_NOTHROW(solve_edge(p, cfg));
}
