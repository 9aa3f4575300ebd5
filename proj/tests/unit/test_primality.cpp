#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sigma_hunt/arith.hpp"

namespace sigma_hunt {
namespace {

using u64 = std::uint64_t;

TEST(Primality, MatchesTrialDivisionBelowOneMillion) {
  for (u64 n = 0; n < 1'000'000; ++n) {
    ASSERT_EQ(is_prime(n), oracle::is_prime_trial(n)) << n;
    if (n % 97 == 0) ASSERT_EQ(is_probable_prime(to_wide(n)), oracle::is_prime_trial(n)) << n;
  }
}

TEST(Primality, KnownValues) {
  EXPECT_TRUE(is_prime(239));
  EXPECT_TRUE(is_prime(129140153));
  EXPECT_TRUE(is_prime(2779530068044157ULL));
  EXPECT_FALSE(is_prime(5559060136088313ULL));  // 3^16 * 129140153
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(18446744073709551615ULL));
}

TEST(Primality, StrongPseudoprimesAreRejected) {
  // composites that fool several fixed Miller-Rabin bases
  for (u64 n : {2047ULL, 3215031751ULL, 2152302898747ULL, 3474749660383ULL, 341550071728321ULL,
                3825123056546413051ULL}) {
    EXPECT_FALSE(is_prime(n)) << n;
    EXPECT_FALSE(is_probable_prime(to_wide(n))) << n;
  }
  EXPECT_FALSE(is_probable_prime(WideInt("318665857834031151167461")));
  EXPECT_FALSE(is_probable_prime(WideInt("3317044064679887385961981")));
  // Carmichael numbers
  for (u64 n : {561ULL, 1105ULL, 1729ULL, 2465ULL, 41041ULL, 825265ULL}) {
    EXPECT_FALSE(is_prime(n)) << n;
  }
  const WideInt arnault(
      "2887148238050771212671429597130393991977609459279722700926516024197432303799152733116328983144639225941977803110929349655578418949441740933805615113979999421542416933972905423711002751042080134966731755152859226962916775325475044445856101949404200039904432116776619949629539250452698719329070373564032273701278453899126120309244841494728976885406024976768122077071687938121709811322297802059565867");
  EXPECT_FALSE(is_probable_prime(arnault));
}

TEST(Primality, RandomU64AgreesWithGmp) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200000; ++i) {
    const u64 n = rng() | 1;
    ASSERT_EQ(is_prime(n), oracle::is_prime_gmp(n)) << n;
  }
}

TEST(Primality, WideAgreesWithGmpOnPrimesAndComposites) {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(43);
  for (int i = 0; i < 400; ++i) {
    WideInt p;
    const WideInt start = rng.get_z_bits(64 + i % 1200);
    mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
    ASSERT_TRUE(is_probable_prime(p)) << p;
    WideInt q;
    mpz_nextprime(q.get_mpz_t(), WideInt(rng.get_z_bits(40 + i % 200)).get_mpz_t());
    ASSERT_FALSE(is_probable_prime(p * q)) << p << " * " << q;
    const WideInt odd = start | 1;
    ASSERT_EQ(is_probable_prime(odd), oracle::is_prime_gmp(odd)) << odd;
  }
}

TEST(Primality, WideSquaresOfPrimesAreComposite) {
  // perfect squares are where the Lucas parameter search would stall
  for (u64 p : {3ULL, 5ULL, 7ULL, 1000003ULL, 4294967291ULL}) {
    EXPECT_FALSE(is_probable_prime(to_wide(p) * to_wide(p))) << p;
  }
  EXPECT_FALSE(is_probable_prime(WideInt(0)));
  EXPECT_FALSE(is_probable_prime(WideInt(1)));
  EXPECT_TRUE(is_probable_prime(WideInt(2)));
}

}  // namespace
}  // namespace sigma_hunt
