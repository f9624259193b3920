// End-to-end acceptance checks. Each numbered check prints one pass/fail
// line; the process exits non-zero if any of them fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "netadv/edge.hpp"
#include "netadv/kernels.hpp"
#include "netadv/network.hpp"
#include "netadv/nonlinear.hpp"
#include "netadv/report.hpp"
#include "netadv/scenarios.hpp"

using namespace netadv;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("%s  criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  if (!ok) ++failures;
}

ConvergenceReport run_study(SchemeVariant variant) {
  SchemeConfig cfg;
  cfg.variant = variant;
  if (variant == SchemeVariant::FixedWeight) cfg.fixed_weight = 1.0 / 3.0;
  return convergence_study([](int I, int N) { return scenario_smooth_gaussian(I, N); }, cfg,
                           {{256, 128}, {512, 256}, {1024, 512}, {2048, 1024}});
}

double table_min(const EdgeSolution& s) {
  return *std::min_element(s.values.begin(), s.values.end());
}

double table_max(const EdgeSolution& s) {
  return *std::max_element(s.values.begin(), s.values.end());
}

}  // namespace

int main() {
  // 1-4: convergence orders of the four single-edge schemes on the smooth
  // travelling Gaussian at Courant number 2, grid doubling 256 -> 2048.
  {
    const ConvergenceReport r = run_study(SchemeVariant::ThirdOrder);
    const double eoc = r.rows.back().eoc;
    report(1, std::fabs(eoc - 3.0) <= 0.15,
           "third-order scheme converges with order 3.00 +- 0.15 (got " + format_full(eoc) + ")");
  }
  {
    const ConvergenceReport r = run_study(SchemeVariant::FixedWeight);
    const double eoc = r.rows.back().eoc;
    report(2, std::fabs(eoc - 2.02) <= 0.15,
           "fixed-weight scheme (w = 1/3) converges with order 2.02 +- 0.15 (got " +
               format_full(eoc) + ")");
  }
  {
    const ConvergenceReport r = run_study(SchemeVariant::FirstOrder);
    bool ok = true;
    for (std::size_t k = 1; k < r.rows.size(); ++k)
      ok = ok && r.rows[k].eoc >= 0.7 && r.rows[k].eoc <= 1.0;
    report(3, ok, "first-order scheme converges with order in [0.7, 1.0] on every pair");
  }
  {
    const ConvergenceReport r = run_study(SchemeVariant::HighResolution);
    bool ok = r.rows.back().eoc >= 2.3;
    for (std::size_t k = 1; k < r.rows.size(); ++k)
      ok = ok && r.rows[k].eoc >= 2.3 && r.rows[k].eoc <= 3.1;
    report(4, ok, "high-resolution scheme keeps order in [2.3, 3.1] on every pair");
  }

  // 5: bounds at C = 2, I = 512 - limited scheme inside [0, ~max], the
  // unlimited third-order scheme dips below zero on the same run.
  {
    const EdgeScenario sc = scenario_smooth_gaussian(512, 256);
    const EdgeSolution hr = solve_high_resolution(sc.problem);
    const EdgeSolution third = solve_third_order(sc.problem);
    const bool ok = table_min(hr) >= -1e-14 && table_max(hr) <= 0.9951 + 5e-3 &&
                    table_min(third) < 0.0;
    report(5, ok,
           "C = 2 bounds: high-resolution within [-1e-14, 1.0001], third-order undershoots "
           "(hr min " + format_full(table_min(hr)) + ", third min " +
               format_full(table_min(third)) + ")");
  }

  // 6: the same contrast at C = 8, I = 256, where the unlimited undershoot
  // is orders of magnitude larger.
  {
    const EdgeScenario sc = scenario_smooth_gaussian(256, 32);
    const EdgeSolution hr = solve_high_resolution(sc.problem);
    const EdgeSolution third = solve_third_order(sc.problem);
    const bool ok = table_min(hr) >= -1e-13 && table_min(third) <= -1e-3;
    report(6, ok,
           "C = 8 bounds: high-resolution min >= -1e-13, third-order min <= -1e-3 (got " +
               format_full(table_min(hr)) + " and " + format_full(table_min(third)) + ")");
  }

  // 7: the four discontinuous/steep pulse shapes at C = 5; bounds hold and
  // the corrector repetition stays rare.
  {
    const int cells[4] = {960, 1120, 1280, 1440};
    bool ok = true;
    for (int k = 1; k <= 4; ++k) {
      const EdgeScenario sc = scenario_four_shapes(k, cells[k - 1], 160);
      const EdgeSolution s = solve_high_resolution(sc.problem);
      const long nodes = static_cast<long>(s.values.size());
      ok = ok && table_min(s) >= -1e-13 && table_max(s) <= 1.0 + 1e-13;
      ok = ok && s.repeated_nodes * 100 <= nodes;  // at most 1% of all nodes
      for (unsigned char rep : s.repeats) ok = ok && rep <= 1;
    }
    report(7, ok,
           "pulse shapes at C = 5: values in [-1e-13, 1 + 1e-13], corrector repeated at most "
           "once and for <= 1% of nodes");
  }

  // 8: quadratic-isotherm benchmark at two resolutions; bounds and discrete
  // conservation against the inflow mass.
  {
    bool ok = true;
    for (auto [I, N] : {std::pair{400, 50}, std::pair{800, 100}}) {
      const EdgeScenario sc = scenario_nonlinear_isotherm(I, N);
      SchemeConfig cfg;
      cfg.courant_min = 40.0 / 11.0;
      const EdgeSolution s = solve_nonlinear_hr(sc.problem, cfg);
      ok = ok && table_min(s) >= -1e-12 && table_max(s) <= 1.0 + 1e-12;
      const ConservationAudit a = conservation_audit(s, sc.problem);
      ok = ok && std::fabs(a.residual) <= 1e-10 * std::fabs(a.inflow);
    }
    report(8, ok,
           "nonlinear isotherm: values in [-1e-12, 1 + 1e-12] and conservation residual <= "
           "1e-10 x inflow mass at I = 400 and 800");
  }

  // 9: the triangular network's outlet amplitude at t = 70 strictly
  // decreases when the grid is refined (the split signals cancel better).
  {
    SchemeConfig cfg;
    cfg.variant = SchemeVariant::ThirdOrder;
    auto outlet_amplitude = [&](TriangleLevel level) {
      const NetworkModel m = scenario_triangle(level);
      const NetworkSolution sol = solve_network(m, cfg);
      const EdgeSolution& e6 = sol.edges.at(6);
      double amp = 0.0;
      for (int i = 0; i <= e6.cells; ++i) amp = std::max(amp, std::fabs(e6.at(i, e6.steps)));
      return amp;
    };
    const double fine = outlet_amplitude(TriangleLevel::Fine);
    const double finer = outlet_amplitude(TriangleLevel::Finer);
    report(9, finer < fine,
           "triangle network: outlet amplitude at t = 70 decreases under refinement (" +
               format_full(fine) + " -> " + format_full(finer) + ")");
  }

  // 10: property suites - randomized bound preservation, conservation,
  // linear reduction of the nonlinear path, closed forms vs a root bracket.
  {
    bool ok = true;
    std::mt19937 rng(20260823);
    std::uniform_real_distribution<double> val(0.0, 1.0);
    std::uniform_real_distribution<double> cd(0.1, 50.0);

    for (int rep = 0; rep < 200 && ok; ++rep) {
      const int I = 10, N = 8;
      EdgeProblem p;
      p.time = TimeGrid(1.0, N);
      const double c = cd(rng);
      p.space = SpaceGrid::uniform(p.time.dt() / c * I, I);
      p.velocity = {1.0};
      p.boundary.resize(N + 1);
      p.initial.resize(I + 1);
      for (auto& b : p.boundary) b = val(rng);
      for (auto& q : p.initial) q = val(rng);
      p.initial[0] = p.boundary[0];
      for (bool hr : {false, true}) {
        const EdgeSolution s = hr ? solve_high_resolution(p) : solve_first_order(p);
        ok = ok && dmp_check(s).empty();
        ok = ok && table_min(s) >= -1e-13 && table_max(s) <= 1.0 + 1e-13;
        const ConservationAudit a = conservation_audit(s, p);
        ok = ok && std::fabs(a.residual) <= 1e-11 * a.throughput;
      }
    }

    {
      // linear retardation model against the closed-form linear solver
      const EdgeScenario sc = scenario_smooth_gaussian(64, 32);
      EdgeProblem wrapped = sc.problem;
      wrapped.retardation = RetardationModel::linear(1.0);
      const EdgeSolution a = solve_high_resolution(sc.problem);
      const EdgeSolution b = solve_nonlinear_hr(wrapped);
      for (std::size_t k = 0; k < a.values.size(); ++k)
        ok = ok && std::fabs(a.values[k] - b.values[k]) <= 1e-12;
    }

    {
      // closed-form node solves against a long bisection
      std::uniform_real_distribution<double> sval(-2.0, 2.0);
      std::uniform_real_distribution<double> pd(0.0, 2.0);
      for (int k = 0; k < 10000 && ok; ++k) {
        const NodeStencil st{sval(rng), sval(rng), sval(rng)};
        const double c = cd(rng);
        const double wbar = preferred_weight(c);
        const double psi_prev = pd(rng);
        const double psi = pd(rng);
        auto fp = [&](double q) {
          return (1.0 + c) * q + 0.5 * (1.0 - wbar) * (st.upstream_next - q) +
                 0.5 * wbar * (st.upstream - st.previous) - st.previous -
                 0.5 * psi_prev * (st.upstream - st.previous) - c * st.upstream;
        };
        auto fc = [&](double q) {
          return (1.0 + c) * q + 0.5 * psi * (st.upstream_next - q) - st.previous -
                 0.5 * psi_prev * (st.upstream - st.previous) - c * st.upstream;
        };
        auto bisect = [](const std::function<double(double)>& f) {
          double lo = -1e3, hi = 1e3, flo = f(lo);
          for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((f(mid) > 0.0) == (flo > 0.0)) {
              lo = mid;
              flo = f(mid);
            } else {
              hi = mid;
            }
          }
          return 0.5 * (lo + hi);
        };
        ok = ok && std::fabs(predict_node(st, c, wbar, psi_prev) - bisect(fp)) <= 1e-12;
        ok = ok && std::fabs(correct_node(st, c, psi, psi_prev) - bisect(fc)) <= 1e-12;
      }
    }
    report(10, ok,
           "property suites: randomized DMP + conservation, linear reduction of the nonlinear "
           "path, closed forms match a bisection oracle");
  }

  if (failures == 0) std::printf("all acceptance checks passed\n");
  return failures == 0 ? 0 : 1;
}
