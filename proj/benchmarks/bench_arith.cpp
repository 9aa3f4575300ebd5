#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sigma_hunt/arith.hpp"
#include "sigma_hunt/families.hpp"

namespace {

using u64 = std::uint64_t;

std::vector<u64> random_values(u64 bits, std::size_t count) {
  std::mt19937_64 rng(bits);
  std::vector<u64> v(count);
  for (auto& x : v) x = (rng() >> (64 - bits)) | (u64{1} << (bits - 1));
  return v;
}

void BM_PointSigma(benchmark::State& state) {
  const auto values = random_values(static_cast<u64>(state.range(0)), 1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma_hunt::sigma(values[i++ & 1023]));
  }
}
BENCHMARK(BM_PointSigma)->Arg(34)->Arg(48)->Arg(56);

void BM_IsPrime64(benchmark::State& state) {
  const auto values = random_values(63, 1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma_hunt::is_prime(values[i++ & 1023] | 1));
  }
}
BENCHMARK(BM_IsPrime64);

// BPSW on numbers the size of the family candidates at a given m.
void BM_ProbablePrimeFamilySize(benchmark::State& state) {
  const auto candidate = sigma_hunt::family_candidate(sigma_hunt::FamilyForm::Two, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma_hunt::is_probable_prime(candidate.p));
  }
}
BENCHMARK(BM_ProbablePrimeFamilySize)->Arg(16)->Arg(300)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_WideFactorize(benchmark::State& state) {
  // a product of two 31-bit primes times a small cofactor, beyond 64 bits
  const sigma_hunt::WideInt n = sigma_hunt::WideInt("2147483647") * sigma_hunt::WideInt("2147483629") *
                                sigma_hunt::WideInt("1000000007");
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma_hunt::factorize(n));
  }
}
BENCHMARK(BM_WideFactorize)->Unit(benchmark::kMicrosecond);

}  // namespace
