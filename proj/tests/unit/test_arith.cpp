#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sigma_hunt/arith.hpp"

namespace sigma_hunt {
namespace {

using u64 = std::uint64_t;

TEST(Sigma, KnownValues) {
  EXPECT_EQ(sigma(u64{1}), 1u);
  EXPECT_EQ(sigma(u64{14}), 24u);
  EXPECT_EQ(sigma(u64{15}), 24u);
  EXPECT_EQ(sigma(u64{18873}), 28314u);
  EXPECT_EQ(sigma(u64{18874}), 28314u);
  EXPECT_EQ(sigma(u64{147454}), 221184u);
  EXPECT_EQ(sigma(u64{147455}), 221184u);
  EXPECT_THROW(sigma(u64{0}), std::domain_error);
}

TEST(Sigma, MatchesAdditiveDivisorSieveUpToOneMillion) {
  constexpr u64 kLimit = 1'000'000;
  const std::vector<u64> expected = oracle::divisor_sum_table(kLimit);
  for (u64 n = 1; n <= kLimit; ++n) {
    ASSERT_EQ(sigma(n), expected[n]) << n;
  }
}

TEST(Sigma, MatchesTrialDivisionOnRandomLargeValues) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<u64> dist(1, 1'000'000'000'000ULL);
  for (int i = 0; i < 300; ++i) {
    const u64 n = dist(rng);
    ASSERT_EQ(sigma(n), oracle::sigma_trial(n)) << n;
  }
}

TEST(Sigma, WideAgreesWithNarrow) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const u64 n = 1 + rng() % kSigmaSafeLimit;
    ASSERT_EQ(sigma(to_wide(n)), to_wide(sigma(n))) << n;
  }
}

TEST(Sigma, MultiplicativeOnCoprimePairs) {
  std::mt19937_64 rng(99);
  int checked = 0;
  while (checked < 2000) {
    const u64 a = 1 + rng() % 1'000'000;
    const u64 b = 1 + rng() % 1'000'000;
    if (std::gcd(a, b) != 1) continue;
    ASSERT_EQ(sigma(a * b), sigma(a) * sigma(b)) << a << " " << b;
    ++checked;
  }
}

TEST(Sigma, OverflowIsReported) {
  // sigma(2^62 * 3) = (2^63 - 1) * 4 does not fit in 64 bits.
  const u64 big = (u64{1} << 62) * 3;
  EXPECT_THROW(sigma(big), std::overflow_error);
}

TEST(Sigma, WideHandlesValuesBeyond64Bits) {
  // 2^70 * 3^5: sigma = (2^71 - 1) * 364
  const WideInt n = pow_ui(2, 70) * 243;
  EXPECT_EQ(sigma(n), (pow_ui(2, 71) - 1) * 364);
  EXPECT_EQ(sigma_prime_power(WideInt(7), 3), WideInt(1 + 7 + 49 + 343));
}

TEST(OddSigma, ExactlySquaresAndTwiceSquares) {
  for (u64 n = 1; n <= 1'000'000; ++n) {
    const bool odd = sigma(n) % 2 == 1;
    const bool special = classify_square_form(n).form != SquareForm::Neither;
    ASSERT_EQ(odd, special) << n;
  }
}

TEST(SquareForm, Examples) {
  EXPECT_EQ(classify_square_form(u64{9}).form, SquareForm::Square);
  EXPECT_EQ(classify_square_form(u64{9}).root, 3u);
  EXPECT_EQ(classify_square_form(u64{8}).form, SquareForm::TwiceSquare);
  EXPECT_EQ(classify_square_form(u64{8}).root, 2u);
  EXPECT_EQ(classify_square_form(u64{14}).form, SquareForm::Neither);
  EXPECT_EQ(classify_square_form(u64{1}).form, SquareForm::Square);
  EXPECT_EQ(classify_square_form(u64{2}).form, SquareForm::TwiceSquare);
  const WideInt big = pow_ui(10, 40);
  EXPECT_EQ(classify_square_form(big * big).root, big);
  EXPECT_EQ(classify_square_form(big * big * 2).form, SquareForm::TwiceSquare);
  EXPECT_EQ(classify_square_form(big * big + 1).form, SquareForm::Neither);
}

TEST(Isqrt, FloorSquareRootAtBoundaries) {
  EXPECT_EQ(isqrt(u64{0}), 0u);
  EXPECT_EQ(isqrt(~u64{0}), 0xFFFFFFFFu);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const u64 n = rng() >> (rng() % 64);
    const u64 r = isqrt(n);
    ASSERT_LE(static_cast<unsigned __int128>(r) * r, n);
    ASSERT_GT(static_cast<unsigned __int128>(r + 1) * (r + 1), n);
  }
}

TEST(Factorize, SmallExamples) {
  const auto f24 = factorize(u64{24});
  ASSERT_EQ(f24.factors.size(), 2u);
  EXPECT_EQ(f24.factors[0], (PrimePower<u64>{2, 3}));
  EXPECT_EQ(f24.factors[1], (PrimePower<u64>{3, 1}));

  const auto f = factorize(u64{28314});  // 2 * 3^2 * 11^2 * 13
  const std::vector<PrimePower<u64>> expected{{2, 1}, {3, 2}, {11, 2}, {13, 1}};
  EXPECT_EQ(f.factors, expected);
  EXPECT_TRUE(factorize(u64{1}).factors.empty());
}

TEST(Factorize, ReassemblesRandom63BitValues) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10000; ++i) {
    const u64 n = 1 + (rng() >> 1);
    const Factorization f = factorize(n);
    unsigned __int128 product = 1;
    u64 previous = 1;
    for (const auto& [p, e] : f.factors) {
      ASSERT_GT(p, previous) << n;
      ASSERT_GE(e, 1u);
      ASSERT_TRUE(oracle::is_prime_gmp(p)) << n << " factor " << p;
      previous = p;
      for (unsigned k = 0; k < e; ++k) product *= p;
    }
    ASSERT_EQ(product, n);
  }
}

TEST(Factorize, SemiprimesOfLargePrimes) {
  const u64 p = 4294967291ULL;  // largest 32-bit prime
  const u64 q = 4294967279ULL;
  const auto f = factorize(p * q);
  const std::vector<PrimePower<u64>> expected{{q, 1}, {p, 1}};
  EXPECT_EQ(f.factors, expected);
  const auto sq = factorize(p * p);
  EXPECT_EQ(sq.factors, (std::vector<PrimePower<u64>>{{p, 2}}));
}

TEST(Factorize, WideReassemblyAndPrimality) {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(23);
  for (int i = 0; i < 60; ++i) {
    // products of smallish random primes so rho finishes quickly
    WideInt n = 1;
    for (int k = 0; k < 4; ++k) {
      WideInt p;
      mpz_nextprime(p.get_mpz_t(), WideInt(rng.get_z_bits(30)).get_mpz_t());
      n *= p;
    }
    const WideFactorization f = factorize(n);
    WideInt product = 1;
    for (const auto& pp : f.factors) {
      ASSERT_NE(mpz_probab_prime_p(pp.prime.get_mpz_t(), 30), 0);
      WideInt power;
      mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
      product *= power;
    }
    ASSERT_EQ(product, n);
  }
}

TEST(Factorize, GivesUpWithTinyBudget) {
  // product of two 40-bit primes cannot be split in a handful of steps
  const WideInt p("1099511627791");
  const WideInt q("1099511627873");
  ASSERT_NE(mpz_probab_prime_p(p.get_mpz_t(), 30), 0);
  ASSERT_NE(mpz_probab_prime_p(q.get_mpz_t(), 30), 0);
  const RhoLimits tiny{4, 1};
  try {
    (void)factorize(p * q * 3, tiny);
    FAIL() << "expected FactoringGaveUp";
  } catch (const FactoringGaveUp& e) {
    EXPECT_EQ(e.cofactor(), p * q);
  }
}

}  // namespace
}  // namespace sigma_hunt
