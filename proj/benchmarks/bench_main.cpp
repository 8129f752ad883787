// Microbenchmarks for the enumeration kernels that dominate census time.

#include <benchmark/benchmark.h>

#include <cmath>

#include "pmi/census.hpp"

using namespace pmi;

namespace {

void BM_CountYBruteforce(benchmark::State& state) {
  const StratumSpec spec{3, 2, 2, static_cast<std::uint32_t>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_Y_bruteforce(spec).count);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(std::pow(state.range(0), 9)));
}
BENCHMARK(BM_CountYBruteforce)->Arg(2)->Arg(3)->Arg(5);

void BM_GraphMaskHistogram(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(graph_mask_histogram(5, q).size());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(gaussian_binomial(5, 3, q)));
}
BENCHMARK(BM_GraphMaskHistogram)->Arg(3)->Arg(7)->Arg(11);

void BM_GrassmannianEnumeration(benchmark::State& state) {
  std::uint64_t points = 0;
  for (auto _ : state) {
    points = 0;
    enumerate_grassmannian(4, 2, PrimeModulus(3), std::uint64_t(1) << 30,
                           [&](const PluckerVector&) { ++points; });
    benchmark::DoNotOptimize(points);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(points));
}
BENCHMARK(BM_GrassmannianEnumeration);

void BM_IsPermissible(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int nedges = n * (n - 1) / 2;
  for (auto _ : state) {
    int count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << nedges); ++mask)
      count += is_permissible(SimpleGraph::from_edge_mask(n, mask));
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() << nedges);
}
BENCHMARK(BM_IsPermissible)->Arg(5)->Arg(6);

void BM_PrincipalMinors(benchmark::State& state) {
  PrimeModulus q(101);
  ExactMatrix m(6, 6, q);
  std::uint32_t v = 1;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m.set(i, j, (v = v * 31 % 101));
  for (auto _ : state) {
    benchmark::DoNotOptimize(principal_minors(m, 3).size());
  }
}
BENCHMARK(BM_PrincipalMinors);

void BM_Case3Scan(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_case3(3, 0).ok);
  }
  state.SetItemsProcessed(state.iterations() * 19683);
}
BENCHMARK(BM_Case3Scan);

}  // namespace

BENCHMARK_MAIN();
