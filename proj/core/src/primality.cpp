#include <array>
#include <cstdint>

#include "sigma_hunt/arith.hpp"
#include "small_primes_internal.hpp"

namespace sigma_hunt {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool strong_probable_prime(u64 n, u64 a, u64 d, unsigned s) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Strong base-2 Miller-Rabin on an odd n > 2.
bool strong_base2(const WideInt& n) {
  WideInt d = n - 1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  const WideInt n_minus_1 = n - 1;
  WideInt x;
  const WideInt two = 2;
  mpz_powm(x.get_mpz_t(), two.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

void half_mod(WideInt& v, const WideInt& n) {
  if (mpz_odd_p(v.get_mpz_t())) v += n;
  mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
}

void reduce(WideInt& v, const WideInt& n) { mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t()); }

// Strong Lucas probable-prime test with Selfridge's method A parameters.
// n odd, > 2, not a perfect square.
bool strong_lucas(const WideInt& n) {
  long d_param = 5;
  for (;;) {
    const WideInt d_wide = d_param;
    const int j = mpz_jacobi(d_wide.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && abs(d_wide) != n) return false;
    d_param = d_param > 0 ? -(d_param + 2) : -d_param + 2;
  }
  const long p_param = 1;
  const long q_param = (1 - d_param) / 4;

  WideInt d = n + 1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  WideInt q_mod = q_param;
  reduce(q_mod, n);
  WideInt d_mod = d_param;
  reduce(d_mod, n);

  WideInt u = 1;
  WideInt v = p_param;
  WideInt qk = q_mod;
  const std::size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    u = u * v;
    reduce(u, n);
    v = v * v - 2 * qk;
    reduce(v, n);
    qk = qk * qk;
    reduce(qk, n);
    if (mpz_tstbit(d.get_mpz_t(), i)) {
      WideInt u_next = p_param * u + v;
      WideInt v_next = d_mod * u + p_param * v;
      reduce(u_next, n);
      reduce(v_next, n);
      half_mod(u_next, n);
      half_mod(v_next, n);
      u = std::move(u_next);
      v = std::move(v_next);
      qk = qk * q_mod;
      reduce(qk, n);
    }
  }
  if (u == 0 || v == 0) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    v = v * v - 2 * qk;
    reduce(v, n);
    if (v == 0) return true;
    qk = qk * qk;
    reduce(qk, n);
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Jim Sinclair's base set is deterministic for all n < 2^64.
  static constexpr std::array<u64, 7> kBases = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (u64 a : kBases) {
    if (!strong_probable_prime(n, a, d, s)) return false;
  }
  return true;
}

bool is_probable_prime(const WideInt& n) {
  if (sgn(n) <= 0) return false;
  if (auto small = to_u64(n)) return is_prime(*small);
  for (std::uint32_t p : detail::trial_primes()) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (!strong_base2(n)) return false;
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  return strong_lucas(n);
}

}  // namespace sigma_hunt
