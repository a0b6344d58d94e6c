#include <benchmark/benchmark.h>

#include <complex>
#include <numbers>

#include "defourier/defourier.hpp"

using namespace defourier;

static void BM_LambertW0(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::lambert_w0(x));
    x = x < 1e3 ? x * 1.01 : 0.5;
  }
}
BENCHMARK(BM_LambertW0);

static void BM_LambertWComplex(benchmark::State& state) {
  const specfun::BranchIndex n{state.range(0)};
  const std::complex<double> z(2.0, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(specfun::lambert_w(n, z));
}
BENCHMARK(BM_LambertWComplex)->Arg(-1)->Arg(0)->Arg(2);

static void BM_Transform(benchmark::State& state) {
  const auto f = testbed::f1();
  const long n = state.range(0);
  const QuadratureParams p(select_h_phi1(n, std::numbers::pi / 2), n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transform(f.integrand, TransformKind::Cosine, 1.0, DEMap::phi1(), p));
  }
  state.SetItemsProcessed(state.iterations() * p.node_count());
}
BENCHMARK(BM_Transform)->Arg(20)->Arg(60)->Arg(200);

static void BM_AutoTransform(benchmark::State& state) {
  const auto f = testbed::f1();
  const AutoConfig cfg{1e-13, 10};
  for (auto _ : state) {
    benchmark::DoNotOptimize(auto_transform(f.integrand, TransformKind::Cosine, 1.0, cfg));
  }
}
BENCHMARK(BM_AutoTransform);

BENCHMARK_MAIN();
