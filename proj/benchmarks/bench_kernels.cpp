#include <benchmark/benchmark.h>

#include <cmath>

#include "besselid/identities.hpp"
#include "besselid/quadrature.hpp"
#include "besselid/special_functions.hpp"

using namespace besselid;

static void BM_BesselJPlain(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j(1.5, x, Summation::plain));
  }
}
BENCHMARK(BM_BesselJPlain)->Arg(1)->Arg(10)->Arg(25);

static void BM_BesselJCompensated(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j(1.5, x, Summation::compensated));
  }
}
BENCHMARK(BM_BesselJCompensated)->Arg(1)->Arg(10)->Arg(25);

static void BM_Laguerre(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(laguerre(m, -2.0, 0.75));
  }
}
BENCHMARK(BM_Laguerre)->Arg(10)->Arg(30)->Arg(512)->Arg(4096);

static void BM_WeightedQuadrature(benchmark::State& state) {
  for (auto _ : state) {
    auto r = integrate_weighted({-0.5, 0.25}, [](double r, double) { return std::cos(3.0 * r); }, 1e-14, 1e-14);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_WeightedQuadrature);

static void BM_SonineIdentity(benchmark::State& state) {
  IdentityParams p;
  p.alpha = 0.5;
  p.beta = Order(0.25);
  p.x = 3.0;
  p.y = 4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sonine_second(p).abs_residual);
  }
}
BENCHMARK(BM_SonineIdentity);

BENCHMARK_MAIN();
