#include <benchmark/benchmark.h>

#include <cmath>

#include "gfrac/operators.hpp"
#include "gfrac/specfun.hpp"

using namespace gfrac;

namespace {

ops::OperatorParams params(double alpha, double rho) {
  ops::OperatorParams p;
  p.alpha = alpha;
  p.rho = rho;
  p.a = 0.0;
  p.b = 3.0;
  return p;
}

const quad::RealFunction kSin = [](double t) { return std::sin(t); };

}  // namespace

static void BM_Gamma(benchmark::State& state) {
  double z = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::gamma(z));
    z = z > 150 ? 0.37 : z + 1.13;
  }
}
BENCHMARK(BM_Gamma);

static void BM_JacobiIntegral(benchmark::State& state) {
  const double mu = state.range(0) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(quad::jacobi_weighted_integral([](double u) { return std::exp(u); }, mu));
  }
}
BENCHMARK(BM_JacobiIntegral)->Arg(1)->Arg(50)->Arg(190);

static void BM_Gfi(benchmark::State& state) {
  const auto p = params(state.range(0) / 10.0, 1.4);
  for (auto _ : state) benchmark::DoNotOptimize(ops::gfi(p, kSin, 1.3));
}
BENCHMARK(BM_Gfi)->Arg(1)->Arg(5)->Arg(25);

static void BM_Gfd(benchmark::State& state) {
  const auto p = params(state.range(0) / 10.0, 1.4);
  for (auto _ : state) benchmark::DoNotOptimize(ops::gfd(p, kSin, 1.3));
}
BENCHMARK(BM_Gfd)->Arg(1)->Arg(5)->Arg(25);

static void BM_InverseComposition(benchmark::State& state) {
  const auto p = params(0.5, 1.7);
  for (auto _ : state) {
    const quad::RealFunction inner = [&](double t) { return ops::gfi(p, kSin, t).value; };
    benchmark::DoNotOptimize(ops::gfd(p, inner, 1.3));
  }
}
BENCHMARK(BM_InverseComposition)->Unit(benchmark::kMillisecond);

static void BM_NfoldOracle(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ops::nfold_oracle(n, 1.4, 0.0, kSin, 1.3));
}
BENCHMARK(BM_NfoldOracle)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
