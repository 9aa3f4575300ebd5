#include "sigma_hunt/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sigma_hunt/arith.hpp"

namespace sigma_hunt {
namespace {

using u64 = std::uint64_t;

// Cache block within a window: found_ plus the matching slice of the output
// stay resident in L2 while every base prime passes over them.
constexpr u64 kBlock = u64{1} << 16;

// Below this every n and every partial product is exact in a double.
constexpr u64 kExactDouble = u64{1} << 53;

}  // namespace

SmallPrimeTable small_primes(std::uint64_t limit, std::size_t memory_budget) {
  if (limit < 2) throw std::invalid_argument("small_primes: limit must be >= 2");
  if (limit > 0xFFFFFFFFULL) throw std::length_error("small_primes: limit exceeds 32-bit primes");
  // pi(x) < 1.26 x / ln x for x > 1.
  const double estimate = 1.26 * static_cast<double>(limit) / std::log(static_cast<double>(limit)) + 8;
  if (estimate * sizeof(std::uint32_t) > static_cast<double>(memory_budget)) {
    throw std::length_error("small_primes: table for limit " + std::to_string(limit) +
                            " exceeds the memory budget");
  }

  SmallPrimeTable table;
  table.limit_ = limit;
  table.primes_.reserve(static_cast<std::size_t>(estimate));
  table.primes_.push_back(2);
  // Odd-only Eratosthenes: bit i stands for 2i + 1.
  const u64 half = (limit - 1) / 2 + 1;
  std::vector<bool> composite(half, false);
  for (u64 i = 1; i < half; ++i) {
    if (composite[i]) continue;
    const u64 p = 2 * i + 1;
    table.primes_.push_back(static_cast<std::uint32_t>(p));
    for (u64 j = p * p / 2; j < half; j += p) composite[j] = true;
  }
  return table;
}

SmallPrimeTable primes_for_range(std::uint64_t hi) {
  const u64 top = hi > 1 ? isqrt(hi - 1) : 1;
  return small_primes(std::max<u64>(top, 2));
}

SegmentSiever::SegmentSiever(const SmallPrimeTable& primes) : primes_(&primes), found_(kBlock) {}

namespace {

void check_window(std::uint64_t lo, std::uint64_t hi, const SmallPrimeTable& primes) {
  if (lo < 1 || hi <= lo) {
    throw std::invalid_argument("sieve: need 1 <= lo < hi, got [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + ")");
  }
  if (hi - 1 > kSigmaSafeLimit) {
    throw std::out_of_range("sieve: hi - 1 = " + std::to_string(hi - 1) +
                            " is beyond the 64-bit sigma range");
  }
  const u64 root = isqrt(hi - 1);
  if (primes.limit() < root) {
    throw std::invalid_argument("sieve: prime table limit " + std::to_string(primes.limit()) +
                                " is below sqrt(hi - 1) = " + std::to_string(root));
  }
}

}  // namespace

void SegmentSiever::sieve(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> out) {
  check_window(lo, hi, *primes_);
  const u64 root = isqrt(hi - 1);
  const u64 len = hi - lo;
  if (out.size() < len) throw std::invalid_argument("sieve: output span too small");

  const auto all = primes_->primes();
  // Odd base primes p <= root; 2 is handled by counting trailing zeros.
  const auto first_odd = all.begin() + (all.empty() ? 0 : 1);
  const auto last = std::upper_bound(first_odd, all.end(), root);
  const std::span<const std::uint32_t> odd(first_odd, last);

  cursors_.resize(odd.size());
  for (std::size_t j = 0; j < odd.size(); ++j) {
    const u64 p = odd[j];
    const u64 r = lo % p;
    const u64 first = r == 0 ? 0 : p - r;
    cursors_[j] = {first, static_cast<std::uint32_t>(((lo + first) / p) % p)};
  }

  for (u64 b0 = 0; b0 < len; b0 += kBlock) {
    const u64 b1 = std::min(len, b0 + kBlock);
    u64* acc = out.data();
    u64* found = found_.data();

    for (u64 i = b0; i < b1; ++i) {
      const unsigned e = static_cast<unsigned>(std::countr_zero(lo + i));
      found[i - b0] = u64{1} << e;
      acc[i] = (u64{2} << e) - 1;
    }

    for (std::size_t j = 0; j < odd.size(); ++j) {
      const u64 p = odd[j];
      PrimeCursor c = cursors_[j];
      for (; c.next < b1; c.next += p) {
        if (c.quotient != 0) {
          acc[c.next] *= p + 1;
          found[c.next - b0] *= p;
        } else {
          // Multiple of p^2: find the full exponent.
          u64 m = (lo + c.next) / (p * p);
          u64 pe = p * p;
          u64 term = 1 + p + p * p;
          while (m % p == 0) {
            m /= p;
            pe *= p;
            term = term * p + 1;
          }
          acc[c.next] *= term;
          found[c.next - b0] *= pe;
        }
        if (++c.quotient == p) c.quotient = 0;
      }
      cursors_[j] = c;
    }

    // Whatever is left after removing every prime <= sqrt(hi - 1) is 1 or
    // a single prime.
    if (lo + b1 <= kExactDouble) {
      for (u64 i = b0; i < b1; ++i) {
        const u64 n = lo + i;
        if (found[i - b0] != n) {
          const u64 cofactor = static_cast<u64>(static_cast<double>(n) / static_cast<double>(found[i - b0]));
          acc[i] *= cofactor + 1;
        }
      }
    } else {
      for (u64 i = b0; i < b1; ++i) {
        const u64 n = lo + i;
        if (found[i - b0] != n) acc[i] *= n / found[i - b0] + 1;
      }
    }
  }
}

Segment sieve_segment(std::uint64_t lo, std::uint64_t hi, const SmallPrimeTable& primes) {
  check_window(lo, hi, primes);
  Segment seg{lo, hi, std::vector<std::uint64_t>(hi - lo)};
  SegmentSiever(primes).sieve(lo, hi, seg.sigma_values);
  return seg;
}

}  // namespace sigma_hunt
