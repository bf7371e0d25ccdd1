#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "l2ext/extremal.hpp"
#include "l2ext/odesys.hpp"
#include "l2ext/planar.hpp"
#include "l2ext/quadrature.hpp"
#include "l2ext/residue.hpp"
#include "l2ext/weights.hpp"

using namespace l2ext;

static void BM_SemiInfiniteQuadrature(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(quad::integrate([](double t) { return std::exp(-t) / (1.0 + t * t); }, 0.0, kInf).value);
  }
}
BENCHMARK(BM_SemiInfiniteQuadrature);

static void BM_CheckCA(benchmark::State& state) {
  const WeightSpec w = weight_ohsawa2(2, 1.0);
  const auto grid = default_grid(w, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_cA(w, grid).margin_cA);
}
BENCHMARK(BM_CheckCA)->Arg(64)->Arg(256);

static void BM_SolveOde(benchmark::State& state) {
  const WeightSpec w = weight_demailly(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_ode(w, 1.0).total_constant());
}
BENCHMARK(BM_SolveOde);

static void BM_SuitaAnnulus(benchmark::State& state) {
  const auto dom = PlanarDomain::annulus(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(suita_check(dom, 0.7).gap);
}
BENCHMARK(BM_SuitaAnnulus);

static void BM_LeastNorm(benchmark::State& state) {
  const ModelBall ball{static_cast<int>(state.range(0)), 0.0, 1e-3, 1.0, 1e-3, false};
  for (auto _ : state) {
    benchmark::DoNotOptimize(least_norm_extension(ball, weight_const(), std::complex<double>(2.0, 1.0)).value);
  }
}
BENCHMARK(BM_LeastNorm)->Arg(1)->Arg(2);

static void BM_ResidueSlab(benchmark::State& state) {
  const ResidueCase c = residue_cases().front();
  for (auto _ : state) benchmark::DoNotOptimize(slab_integral(c.config, 10.0).value);
}
BENCHMARK(BM_ResidueSlab);
BENCHMARK_MAIN();
