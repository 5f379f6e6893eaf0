#include <benchmark/benchmark.h>

#include "elab/barriers.hpp"
#include "elab/hamiltonian.hpp"
#include "elab/reachability.hpp"
#include "elab/scalar_field.hpp"

using namespace elab;

namespace {

void BM_PolyEval(benchmark::State& state) {
  Poly4 p = flat_barrier_poly(FlatBarrier::G1);
  Point q{0.3, -0.4, 0.2, 0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.eval(q));
  }
}
BENCHMARK(BM_PolyEval);

void BM_LieBracket(benchmark::State& state) {
  FrameStructure f = FrameStructure::normal_form(
      Poly4::monomial(0.05, {1, 0, 0, 0}), Poly4{},
      Poly4::monomial(0.05, {1, 0, 0, 0}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lie_bracket(f.X(), f.Y()));
  }
}
BENCHMARK(BM_LieBracket);

void BM_HamiltonianFlow(benchmark::State& state) {
  FrameStructure f = FrameStructure::flat();
  PhasePoint pp{{0, 0, 0, 0}, {-0.9, 0.4, 0.8, -0.3}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(hamiltonian_flow(f, pp, 1.0));
  }
}
BENCHMARK(BM_HamiltonianFlow);

void BM_CharacteristicSolve(benchmark::State& state) {
  FrameStructure f = FrameStructure::flat();
  ScalarField field = ScalarField::characteristic(BarrierSpec::cauchy(1), f);
  Point q{0.7, -0.3, 0.2, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(characteristic_solve(field, q));
  }
}
BENCHMARK(BM_CharacteristicSolve);

void BM_PathIntegration(benchmark::State& state) {
  FrameStructure f = FrameStructure::flat();
  ControlPath cp(Point{}, {{0.3, 1.2, 0.5}, {0.3, 1.0, -1.0}, {0.3, 2.0, 1.5}});
  Box4 box{{0.0, 1.2}, {-1, 1}, {-1, 1}, {-1, 1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_path(f, cp, IntegratorConfig{}, box));
  }
}
BENCHMARK(BM_PathIntegration);

void BM_SampleCloud(benchmark::State& state) {
  FrameStructure f = FrameStructure::flat();
  SamplerConfig sc;
  sc.n_paths = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_reachable(f, sc, 1));
  }
}
BENCHMARK(BM_SampleCloud)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
