#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sigma_hunt {

// Upper bound on the base-prime table, in bytes of prime storage.
inline constexpr std::size_t kDefaultPrimeTableBudget = std::size_t{1} << 30;

// Immutable ascending list of all primes <= limit.
class SmallPrimeTable {
 public:
  SmallPrimeTable() = default;

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

 private:
  friend SmallPrimeTable small_primes(std::uint64_t limit, std::size_t memory_budget);

  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
};

// Throws std::invalid_argument for limit < 2 and std::length_error when the
// table would exceed `memory_budget` bytes (or the primes outgrow 32 bits).
SmallPrimeTable small_primes(std::uint64_t limit,
                             std::size_t memory_budget = kDefaultPrimeTableBudget);

// Table sufficient for sieving windows that end below `hi`.
SmallPrimeTable primes_for_range(std::uint64_t hi);

struct Segment {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint64_t> sigma_values;  // sigma_values[i] == sigma(lo + i)
};

// Reusable scratch for repeated sieving; one per worker thread.
class SegmentSiever {
 public:
  explicit SegmentSiever(const SmallPrimeTable& primes);

  // Writes sigma(lo + i) into out[i] for every i < hi - lo.
  // Preconditions are checked before any work: 1 <= lo < hi,
  // hi - 1 <= kSigmaSafeLimit, primes.limit() >= isqrt(hi - 1),
  // out.size() >= hi - lo.
  void sieve(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> out);

 private:
  struct PrimeCursor {
    std::uint64_t next;      // offset of the next multiple within the window
    std::uint32_t quotient;  // (lo + next) / p reduced mod p
  };

  const SmallPrimeTable* primes_;
  std::vector<std::uint64_t> found_;  // product of prime powers found so far
  std::vector<PrimeCursor> cursors_;
};

Segment sieve_segment(std::uint64_t lo, std::uint64_t hi, const SmallPrimeTable& primes);

}  // namespace sigma_hunt
