#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "sigma_hunt/arith.hpp"
#include "small_primes_internal.hpp"

namespace sigma_hunt {

namespace detail {

std::span<const std::uint32_t> primes_below_65536() {
  static const std::vector<std::uint32_t> table = [] {
    constexpr std::uint32_t kLimit = 65536;
    std::vector<bool> composite(kLimit, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < kLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j < kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return table;
}

std::span<const std::uint32_t> trial_primes() {
  const auto all = primes_below_65536();
  const auto end = std::lower_bound(all.begin(), all.end(), 1000u);
  return all.first(static_cast<std::size_t>(end - all.begin()));
}

}  // namespace detail

FactoringGaveUp::FactoringGaveUp(WideInt cofactor)
    : std::runtime_error("factoring gave up on cofactor " + to_decimal(cofactor)),
      cofactor_(std::move(cofactor)) {}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Trial division bound used ahead of rho.
constexpr u64 kTrialBound = 1024;

// Pollard-Brent over 64 bits. Returns a non-trivial factor of composite n.
u64 brent_u64(u64 n, const RhoLimits& limits) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(n);
  constexpr u64 kBatch = 128;
  for (unsigned attempt = 0; attempt < limits.restarts; ++attempt) {
    const u64 c = rng() % (n - 1) + 1;
    auto f = [&](u64 x) { return static_cast<u64>((static_cast<u128>(x) * x + c) % n); };
    u64 y = rng() % n;
    u64 x = y;
    u64 ys = y;
    u64 g = 1;
    u64 q = 1;
    u64 r = 1;
    u64 spent = 0;
    while (g == 1 && spent < limits.iterations_per_cycle) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 steps = std::min(kBatch, r - k);
        for (u64 i = 0; i < steps; ++i) {
          y = f(y);
          q = static_cast<u64>(static_cast<u128>(q) * (x > y ? x - y : y - x) % n);
        }
        spent += steps;
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      // Batch overshot; replay one step at a time from the saved point.
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  throw FactoringGaveUp(to_wide(n));
}

void split_u64(u64 n, std::map<u64, unsigned>& out, const RhoLimits& limits) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const u64 root = isqrt(n);
  if (root * root == n) {
    std::map<u64, unsigned> sub;
    split_u64(root, sub, limits);
    for (auto [p, e] : sub) out[p] += 2 * e;
    return;
  }
  const u64 d = brent_u64(n, limits);
  split_u64(d, out, limits);
  split_u64(n / d, out, limits);
}

WideInt brent_wide(const WideInt& n, const RhoLimits& limits) {
  std::mt19937_64 rng(mpz_get_ui(n.get_mpz_t()));
  gmp_randclass gmp_rng(gmp_randinit_default);
  gmp_rng.seed(static_cast<unsigned long>(rng()));
  constexpr u64 kBatch = 128;
  WideInt x, y, ys, q, g, diff;
  for (unsigned attempt = 0; attempt < limits.restarts; ++attempt) {
    const WideInt c = gmp_rng.get_z_range(n - 1) + 1;
    auto step = [&](WideInt& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    y = gmp_rng.get_z_range(n);
    q = 1;
    g = 1;
    u64 r = 1;
    u64 spent = 0;
    while (g == 1 && spent < limits.iterations_per_cycle) {
      x = y;
      for (u64 i = 0; i < r; ++i) step(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 steps = std::min(kBatch, r - k);
        for (u64 i = 0; i < steps; ++i) {
          step(y);
          diff = x - y;
          q = q * abs(diff);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        spent += steps;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        step(ys);
        diff = x - ys;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  throw FactoringGaveUp(n);
}

struct WideLess {
  bool operator()(const WideInt& a, const WideInt& b) const { return cmp(a, b) < 0; }
};

void split_wide(const WideInt& n, std::map<WideInt, unsigned, WideLess>& out, const RhoLimits& limits) {
  if (n == 1) return;
  if (auto small = to_u64(n)) {
    std::map<u64, unsigned> sub;
    split_u64(*small, sub, limits);
    for (auto [p, e] : sub) out[to_wide(p)] += e;
    return;
  }
  if (is_probable_prime(n)) {
    out[n] += 1;
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    std::map<WideInt, unsigned, WideLess> sub;
    split_wide(isqrt(n), sub, limits);
    for (auto& [p, e] : sub) out[p] += 2 * e;
    return;
  }
  const WideInt d = brent_wide(n, limits);
  split_wide(d, out, limits);
  split_wide(n / d, out, limits);
}

}  // namespace

Factorization factorize(std::uint64_t n, const RhoLimits& limits) {
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  Factorization result{n, {}};
  std::map<u64, unsigned> found;
  for (std::uint32_t p : detail::primes_below_65536()) {
    if (p >= kTrialBound || u64{p} * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    found[p] = e;
  }
  if (n > 1) {
    if (n < kTrialBound * kTrialBound) {
      ++found[n];  // no factor below kTrialBound, so n is prime
    } else {
      split_u64(n, found, limits);
    }
  }
  for (auto [p, e] : found) result.factors.push_back({p, e});
  return result;
}

WideFactorization factorize(const WideInt& n, const RhoLimits& limits) {
  if (sgn(n) <= 0) throw std::domain_error("factorize: n must be positive");
  if (auto small = to_u64(n)) {
    Factorization f = factorize(*small, limits);
    WideFactorization out{n, {}};
    for (auto& pp : f.factors) out.factors.push_back({to_wide(pp.prime), pp.exponent});
    return out;
  }
  WideInt rest = n;
  std::map<WideInt, unsigned, WideLess> found;
  for (std::uint32_t p : detail::primes_below_65536()) {
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    unsigned e = 0;
    do {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
    found[WideInt(p)] = e;
  }
  split_wide(rest, found, limits);
  WideFactorization out{n, {}};
  for (auto& [p, e] : found) out.factors.push_back({p, e});
  return out;
}

}  // namespace sigma_hunt
