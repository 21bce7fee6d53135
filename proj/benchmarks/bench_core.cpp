#include <benchmark/benchmark.h>

#include "fockida/beurling.hpp"
#include "fockida/ida.hpp"
#include "fockida/operators.hpp"
#include "fockida/schatten.hpp"

using namespace fockida;

namespace {

const Basis& basis(int n) {
  static const Basis b100 = build_basis(Weight::standard(1.0), 100);
  static const Basis b240 = build_basis(Weight::standard(1.0), 240);
  return n <= 100 ? b100 : b240;
}

void BM_BuildBasis(benchmark::State& state) {
  const Weight w = Weight::standard(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_basis(w, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildBasis)->Arg(60)->Arg(240)->Unit(benchmark::kMillisecond);

void BM_HankelGram(benchmark::State& state) {
  const Symbol f = symbols::complex_bump(0.0, 1.0, 2.0);
  const int n = static_cast<int>(state.range(0));
  const Basis& b = basis(100);
  for (auto _ : state) benchmark::DoNotOptimize(hankel_gram(f, b, n));
}
BENCHMARK(BM_HankelGram)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_SingularValues(benchmark::State& state) {
  const OperatorMatrix g = hankel_gram(symbols::bump(0.0, 1.0), basis(100), 60);
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(g));
}
BENCHMARK(BM_SingularValues)->Unit(benchmark::kMicrosecond);

void BM_KernelHankel(benchmark::State& state) {
  const auto route = static_cast<KernelRoute>(state.range(0));
  const Symbol f = symbols::random_field(7, 16, 2.0);
  const KernelHankel kh(f, basis(240), route);
  cplx z{0.3, -0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kh.norm(z));
    z *= cplx{0.999, 0.05};
  }
}
BENCHMARK(BM_KernelHankel)->Arg(static_cast<int>(KernelRoute::Grid))->Arg(static_cast<int>(KernelRoute::Sections))
    ->Unit(benchmark::kMicrosecond);

void BM_LocalFit(benchmark::State& state) {
  const Symbol f = symbols::complex_bump(0.0, 1.0, 2.0);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(local_holo_fit(f, {0.3, 0.1}, 0.5, d));
}
BENCHMARK(BM_LocalFit)->Arg(4)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_GField(benchmark::State& state) {
  const Symbol f = symbols::bump(0.0, 1.0);
  const QuadratureGrid centers = center_grid(4.0, 32, 0.5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(g_field(f, 0.5, 10, centers));
}
BENCHMARK(BM_GField)->Unit(benchmark::kMillisecond);

void BM_Beurling(benchmark::State& state) {
  const PlaneGrid grid(static_cast<int>(state.range(0)), 8.0);
  const std::vector<cplx> g = grid.sample([](cplx z) { return -z * std::exp(-std::norm(z)); });
  for (auto _ : state) benchmark::DoNotOptimize(ahlfors_beurling(grid, g));
}
BENCHMARK(BM_Beurling)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
