// ===== micro-benchmarks =====
// The hot paths of a run, each measured in isolation: one full IMEX step at
// production resolutions, the junction Newton closure alone, the network
// eigenvalue solve behind the Poincare constant, the weighted Fermat point,
// and one diagnostics record.

#include <benchmark/benchmark.h>

#include <array>
#include <cmath>

#include "triodflow/diagnostics.hpp"
#include "triodflow/geometry.hpp"
#include "triodflow/model.hpp"
#include "triodflow/rayleigh.hpp"
#include "triodflow/scenario.hpp"
#include "triodflow/solver.hpp"

using namespace triodflow;

namespace {

EndpointSet equilateral_endpoints() {
  const double s = std::sqrt(3.0) / 2.0;
  return EndpointSet{{Vec2{-1.0, 0.0}, Vec2{0.5, -s}, Vec2{0.5, s}}};
}

TriodModel quadratic_model() {
  return TriodModel{SurfaceTensionModel::quadratic(1.0, 0.5), 1.0};
}

TriodState bump_state(int grid_n) {
  return perturbed_steiner_initial(equilateral_endpoints(), {0.0, 0.3, -0.3},
                                   quadratic_model(), grid_n, 0.1, 1);
}

}  // namespace

static void BM_full_step(benchmark::State& bench) {
  const int grid_n = static_cast<int>(bench.range(0));
  const TriodModel model = quadratic_model();
  const TriodState base = bump_state(grid_n);
  SolverConfig config;
  config.grid_n = grid_n;
  config.cfl = 0.4;
  for (auto _ : bench) {
    TriodState state = base;
    const StepReport report = step(state, model, config);
    benchmark::DoNotOptimize(report.herring_residual_post);
  }
}
BENCHMARK(BM_full_step)->Arg(100)->Arg(200)->Arg(400);

static void BM_junction_closure(benchmark::State& bench) {
  const TriodModel model = quadratic_model();
  const TriodState base = bump_state(200);
  SolverConfig config;
  config.grid_n = 200;
  config.cfl = 0.4;
  for (auto _ : bench) {
    TriodState state = base;
    const JunctionSolution sol = apply_junction_bc(state, model, config);
    benchmark::DoNotOptimize(sol.junction_theta[0]);
  }
}
BENCHMARK(BM_junction_closure);

static void BM_poincare_constant(benchmark::State& bench) {
  NetworkEigenProblem problem;
  problem.seg_lengths = {0.95, 1.05, 1.0};
  problem.weights = {1.18, 1.05, 1.0};
  problem.nodes_per_segment = static_cast<int>(bench.range(0));
  for (auto _ : bench) {
    benchmark::DoNotOptimize(poincare_constant(problem));
  }
}
BENCHMARK(BM_poincare_constant)->Arg(24)->Arg(48)->Arg(96);

static void BM_weighted_fermat_point(benchmark::State& bench) {
  const EndpointSet endpoints{
      {Vec2{-1.2, 0.1}, Vec2{0.7, -0.9}, Vec2{0.4, 1.1}}};
  const std::array<double, 3> weights{1.18, 1.05, 1.0};
  for (auto _ : bench) {
    benchmark::DoNotOptimize(weighted_fermat_point(endpoints, weights));
  }
}
BENCHMARK(BM_weighted_fermat_point);

static void BM_diagnostics_record(benchmark::State& bench) {
  const EndpointSet endpoints = equilateral_endpoints();
  const TriodModel model = quadratic_model();
  const TriodState state = bump_state(200);
  const PlanarTriod steiner_ref = steiner_triod(endpoints, 200);
  for (auto _ : bench) {
    const DiagnosticsRecord r = make_record(state, model, endpoints, steiner_ref);
    benchmark::DoNotOptimize(r.energy);
  }
}
BENCHMARK(BM_diagnostics_record);

BENCHMARK_MAIN();
