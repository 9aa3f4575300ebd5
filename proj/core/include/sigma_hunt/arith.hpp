#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigma_hunt/wide_int.hpp"

namespace sigma_hunt {

// Largest n for which the 64-bit paths (point sigma and the range sieve)
// are guaranteed not to overflow: n * (1 + ln n) < 2^64 holds well past it.
inline constexpr std::uint64_t kSigmaSafeLimit = 100'000'000'000'000'000ULL;

template <typename Int>
struct PrimePower {
  Int prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime-power decomposition. Primes strictly increasing, exponents >= 1,
// product equals `value`; the factorization of 1 is empty.
template <typename Int>
struct BasicFactorization {
  Int value;
  std::vector<PrimePower<Int>> factors;
};

using Factorization = BasicFactorization<std::uint64_t>;
using WideFactorization = BasicFactorization<WideInt>;

// Raised when Pollard-Brent exhausts its iteration budget. Carries the
// cofactor that could not be split so callers can report it.
class FactoringGaveUp : public std::runtime_error {
 public:
  explicit FactoringGaveUp(WideInt cofactor);
  const WideInt& cofactor() const { return cofactor_; }

 private:
  WideInt cofactor_;
};

// Budget for one Brent cycle and the number of random restarts.
struct RhoLimits {
  std::uint64_t iterations_per_cycle = std::uint64_t{1} << 20;
  unsigned restarts = 64;
};

Factorization factorize(std::uint64_t n, const RhoLimits& limits = {});
WideFactorization factorize(const WideInt& n, const RhoLimits& limits = {});

// Sum of divisors. The 64-bit overload throws std::domain_error for n == 0
// and std::overflow_error if sigma(n) does not fit 64 bits.
std::uint64_t sigma(std::uint64_t n);
WideInt sigma(const WideInt& n, const RhoLimits& limits = {});

std::uint64_t sigma_of(const Factorization& f);
WideInt sigma_of(const WideFactorization& f);

// (p^(e+1) - 1) / (p - 1) by Horner's rule, no division.
WideInt sigma_prime_power(const WideInt& p, unsigned e);

// Deterministic for every 64-bit input (Miller-Rabin with a fixed base set).
bool is_prime(std::uint64_t n);

// Deterministic below 2^64; above that a Baillie-PSW test (strong base-2
// Miller-Rabin plus strong Lucas with Selfridge parameters).
bool is_probable_prime(const WideInt& n);

// floor(sqrt(n)) by integer Newton iteration.
std::uint64_t isqrt(std::uint64_t n);
WideInt isqrt(const WideInt& n);

enum class SquareForm { Square, TwiceSquare, Neither };

template <typename Int>
struct SquareClass {
  SquareForm form = SquareForm::Neither;
  Int root{};  // r with n = r^2 or n = 2 r^2; zero for Neither
};

// n >= 1. Exact integer arithmetic only.
SquareClass<std::uint64_t> classify_square_form(std::uint64_t n);
SquareClass<WideInt> classify_square_form(const WideInt& n);

const char* to_string(SquareForm form);

}  // namespace sigma_hunt
