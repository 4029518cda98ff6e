// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "relaxarea/quadrature.hpp"
#include "relaxarea/relaxation.hpp"
#include "relaxarea/topology.hpp"

using namespace relaxarea;

namespace {

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) ? "parallel" : "serial"); }

VectorField planar_vortex() {
  FieldParams p;
  p.n = 3;
  return make_example_field(FieldKind::planar_vortex, p);
}

void BM_energy_metrics(benchmark::State& state) {
  const VectorField u = planar_vortex();
  const Domain dom = Domain::ball(3, 1.0, Point::Zero(3));
  QuadratureOptions o;
  o.tol = 1e-7;
  o.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(energy_metrics(u, dom, o).area.value);
  label(state);
}

void BM_extract_lines_3d(benchmark::State& state) {
  const VectorField u = planar_vortex();
  const GridSpec g = GridSpec::cube(3, 1.0, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_lines_3d(u, g, mode(state)).cells.size());
  label(state);
}

void BM_extract_vortices_2d(benchmark::State& state) {
  FieldParams p;
  p.chain_length = 6;
  const VectorField u = make_example_field(FieldKind::vortex_chain, p);
  const GridSpec g = GridSpec::cube(2, 1.0, 512);
  for (auto _ : state) benchmark::DoNotOptimize(extract_vortices_2d(u, g, mode(state)).cells.size());
  label(state);
}

void BM_smoothing_study(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        convergence_study("eps", smoothing_builder(), {0.2, 0.1, 0.05, 0.025}, {}, mode(state)).area.limit);
  label(state);
}

}  // namespace

BENCHMARK(BM_energy_metrics)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_extract_lines_3d)->Args({0, 64})->Args({1, 64})->Args({0, 128})->Args({1, 128})
    ->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_extract_vortices_2d)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_smoothing_study)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
