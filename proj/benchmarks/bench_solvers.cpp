#include <benchmark/benchmark.h>

#include "netadv/edge.hpp"
#include "netadv/nonlinear.hpp"
#include "netadv/scenarios.hpp"

using namespace netadv;

namespace {

void run_edge(benchmark::State& state, SchemeVariant variant) {
  const int I = static_cast<int>(state.range(0));
  const EdgeScenario sc = scenario_smooth_gaussian(I, I / 2);  // C = 2
  SchemeConfig cfg;
  cfg.variant = variant;
  for (auto _ : state) {
    const EdgeSolution s = solve_edge(sc.problem, cfg);
    benchmark::DoNotOptimize(s.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(I + 1) * (I / 2 + 1));
}

void BM_FirstOrder(benchmark::State& state) { run_edge(state, SchemeVariant::FirstOrder); }
void BM_ThirdOrder(benchmark::State& state) { run_edge(state, SchemeVariant::ThirdOrder); }
void BM_Weno(benchmark::State& state) { run_edge(state, SchemeVariant::WenoHeuristic); }
void BM_HighResolution(benchmark::State& state) {
  run_edge(state, SchemeVariant::HighResolution);
}
void BM_DirectHR(benchmark::State& state) { run_edge(state, SchemeVariant::DirectHR); }

void BM_NonlinearHR(benchmark::State& state) {
  const int I = static_cast<int>(state.range(0));
  const EdgeScenario sc = scenario_nonlinear_isotherm(I, I / 8);
  SchemeConfig cfg;
  cfg.courant_min = 40.0 / 11.0;
  for (auto _ : state) {
    const EdgeSolution s = solve_nonlinear_hr(sc.problem, cfg);
    benchmark::DoNotOptimize(s.values.data());
  }
}

void BM_TriangleNetwork(benchmark::State& state) {
  const NetworkModel m = scenario_triangle(TriangleLevel::Fine);
  SchemeConfig cfg;
  for (auto _ : state) {
    const NetworkSolution sol = solve_network(m, cfg);
    benchmark::DoNotOptimize(sol.order.data());
  }
}

void BM_SewerNetwork(benchmark::State& state) {
  const NetworkModel m = scenario_sewer();
  SchemeConfig cfg;
  for (auto _ : state) {
    const NetworkSolution sol = solve_network(m, cfg);
    benchmark::DoNotOptimize(sol.order.data());
  }
}

BENCHMARK(BM_FirstOrder)->Arg(256)->Arg(1024);
BENCHMARK(BM_ThirdOrder)->Arg(256)->Arg(1024);
BENCHMARK(BM_Weno)->Arg(256)->Arg(1024);
BENCHMARK(BM_HighResolution)->Arg(256)->Arg(1024);
BENCHMARK(BM_DirectHR)->Arg(256)->Arg(1024);
BENCHMARK(BM_NonlinearHR)->Arg(400)->Arg(800);
BENCHMARK(BM_TriangleNetwork);
BENCHMARK(BM_SewerNetwork);

}  // namespace

BENCHMARK_MAIN();
