#include <benchmark/benchmark.h>

#include "viq/examples.hpp"
#include "viq/functors.hpp"
#include "viq/rat.hpp"

namespace {

void BM_CosetRepresentatives(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(viq::coset_representatives(2, 2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CosetRepresentatives)->Arg(4)->Arg(5)->Arg(6);

void BM_PresentedTruncate(benchmark::State& state) {
  viq::RatRing ring;
  auto p = viq::example_module(ring, 2, "itriv1_plus_k0");
  for (auto _ : state)
    benchmark::DoNotOptimize(viq::build_windows(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PresentedTruncate)->Arg(3)->Arg(4)->Arg(5);

void BM_BarSigma(benchmark::State& state) {
  viq::RatRing ring;
  auto p = viq::example_module(ring, 2, "itriv2");
  auto w = viq::build_windows(p, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(viq::bar_sigma<viq::RatRing>(w.module));
}
BENCHMARK(BM_BarSigma)->Arg(4)->Arg(5);

void BM_RankRational(benchmark::State& state) {
  viq::RatRing ring;
  const int n = static_cast<int>(state.range(0));
  viq::Mat<viq::RatRing> m(ring, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = mpq_class(i * j % 7 - 3, 1 + (i + j) % 5);
  for (auto _ : state) benchmark::DoNotOptimize(viq::rank_of(m));
}
BENCHMARK(BM_RankRational)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
