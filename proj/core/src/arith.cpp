#include "sigma_hunt/arith.hpp"

#include <bit>
#include <limits>

namespace sigma_hunt {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u128 kU64Max = std::numeric_limits<u64>::max();

[[noreturn]] void overflow(u64 n) {
  throw std::overflow_error("sigma(" + std::to_string(n) + ") exceeds 64 bits");
}

}  // namespace

std::uint64_t sigma_of(const Factorization& f) {
  u128 total = 1;
  for (const auto& [p, e] : f.factors) {
    u128 term = 1;
    for (unsigned i = 0; i < e; ++i) {
      term = term * p + 1;
      if (term > kU64Max) overflow(f.value);
    }
    total *= term;
    if (total > kU64Max) overflow(f.value);
  }
  return static_cast<u64>(total);
}

WideInt sigma_prime_power(const WideInt& p, unsigned e) {
  WideInt term = 1;
  for (unsigned i = 0; i < e; ++i) term = term * p + 1;
  return term;
}

WideInt sigma_of(const WideFactorization& f) {
  WideInt total = 1;
  for (const auto& [p, e] : f.factors) total *= sigma_prime_power(p, e);
  return total;
}

std::uint64_t sigma(std::uint64_t n) {
  if (n == 0) throw std::domain_error("sigma: n must be positive");
  return sigma_of(factorize(n));
}

WideInt sigma(const WideInt& n, const RhoLimits& limits) {
  if (sgn(n) <= 0) throw std::domain_error("sigma: n must be positive");
  return sigma_of(factorize(n, limits));
}

std::uint64_t isqrt(std::uint64_t n) {
  if (n < 2) return n;
  // 2^ceil(bits/2) is an overestimate; Newton then decreases monotonically
  // to floor(sqrt(n)).
  u64 x = u64{1} << ((std::bit_width(n) + 1) / 2);
  for (;;) {
    const u64 y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

WideInt isqrt(const WideInt& n) {
  if (sgn(n) < 0) throw std::domain_error("isqrt: negative argument");
  WideInt out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

SquareClass<std::uint64_t> classify_square_form(std::uint64_t n) {
  if (n == 0) throw std::domain_error("classify_square_form: n must be positive");
  if (const u64 r = isqrt(n); r * r == n) return {SquareForm::Square, r};
  if (n % 2 == 0) {
    if (const u64 r = isqrt(n / 2); 2 * r * r == n) return {SquareForm::TwiceSquare, r};
  }
  return {SquareForm::Neither, 0};
}

SquareClass<WideInt> classify_square_form(const WideInt& n) {
  if (sgn(n) <= 0) throw std::domain_error("classify_square_form: n must be positive");
  WideInt root;
  WideInt rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  if (rem == 0) return {SquareForm::Square, root};
  if (mpz_even_p(n.get_mpz_t())) {
    const WideInt half = n / 2;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), half.get_mpz_t());
    if (rem == 0) return {SquareForm::TwiceSquare, root};
  }
  return {SquareForm::Neither, WideInt(0)};
}

const char* to_string(SquareForm form) {
  switch (form) {
    case SquareForm::Square:
      return "square";
    case SquareForm::TwiceSquare:
      return "twice-square";
    case SquareForm::Neither:
      break;
  }
  return "neither";
}

}  // namespace sigma_hunt
