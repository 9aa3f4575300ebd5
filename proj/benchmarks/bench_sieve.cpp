#include <benchmark/benchmark.h>

#include <vector>

#include "sigma_hunt/search.hpp"
#include "sigma_hunt/sieve.hpp"

namespace {

using u64 = std::uint64_t;

// One segment of sigma values at a given height; reports integers per second.
void BM_SieveSegment(benchmark::State& state) {
  const u64 lo = static_cast<u64>(state.range(0));
  const u64 width = static_cast<u64>(state.range(1));
  const sigma_hunt::SmallPrimeTable primes = sigma_hunt::primes_for_range(lo + width);
  sigma_hunt::SegmentSiever siever(primes);
  std::vector<u64> out(width);
  for (auto _ : state) {
    siever.sieve(lo, lo + width, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * width));
}
BENCHMARK(BM_SieveSegment)
    ->Args({1, 1 << 22})
    ->Args({1'000'000'000, 1 << 22})
    ->Args({15'000'000'000, 1 << 20})
    ->Args({15'000'000'000, 1 << 22})
    ->Args({15'000'000'000, 1 << 24})
    ->Unit(benchmark::kMillisecond);

void BM_SearchRange(benchmark::State& state) {
  const u64 lo = static_cast<u64>(state.range(0));
  constexpr u64 kWidth = 1 << 24;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma_hunt::find_solutions(lo, lo + kWidth));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kWidth));
}
BENCHMARK(BM_SearchRange)->Arg(1)->Arg(10'000'000'000)->Unit(benchmark::kMillisecond);

}  // namespace
