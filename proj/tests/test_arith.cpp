#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rsq/arith.hpp"

using namespace rsq;

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre(0, 7), 0);
  EXPECT_EQ(legendre(2, 7), 1);
  EXPECT_EQ(legendre(5, 13), -1);
}

TEST(Legendre, RejectsBadModulus) {
  EXPECT_THROW(legendre(3, 2), std::invalid_argument);
  EXPECT_THROW(legendre(3, 9), std::invalid_argument);
  EXPECT_THROW(legendre(3, 1), std::invalid_argument);
}

TEST(Legendre, MatchesResidueTable) {
  for (Natural p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47})
    for (Integer a = -60; a <= 60; ++a) EXPECT_EQ(legendre(a, p), oracle::legendre_table(a, p)) << a << " " << p;
}

TEST(Legendre, CompletelyMultiplicative) {
  for (Natural p : primes_up_to(50)) {
    if (p == 2) continue;
    for (Integer a = 0; a < static_cast<Integer>(p); ++a)
      for (Integer b = 0; b < static_cast<Integer>(p); ++b)
        ASSERT_EQ(legendre(a * b, p), legendre(a, p) * legendre(b, p)) << a << " " << b << " " << p;
  }
}

TEST(Ord, Examples) {
  EXPECT_EQ(ord(50, 5), 2u);
  EXPECT_EQ(ord(7, 5), 0u);
  EXPECT_EQ(ord(79, 79), 1u);
}

TEST(Ord, AgreesWithFactorization) {
  for (Natural n = 1; n <= 10'000; ++n) {
    const auto f = factorize(n);
    for (Natural p : {2, 3, 5, 7, 11, 97}) {
      unsigned e = 0;
      for (const auto& [q, k] : f.pairs)
        if (q == p) e = static_cast<unsigned>(k);
      ASSERT_EQ(ord(n, p), e) << n;
    }
  }
}

TEST(SumsOfSquares, Examples) {
  EXPECT_TRUE(is_sum_two_squares(2));
  EXPECT_FALSE(is_sum_two_squares(42));
  EXPECT_TRUE(is_sum_two_squares(50));
  EXPECT_FALSE(is_sum_three_squares(7));
  EXPECT_FALSE(is_sum_three_squares(15));
  EXPECT_TRUE(is_sum_three_squares(5));
}

TEST(SumsOfSquares, AgreeWithExhaustiveSearch) {
  for (Natural n = 1; n <= 10'000; ++n) {
    ASSERT_EQ(is_sum_two_squares(n), oracle::two_squares(n)) << n;
    ASSERT_EQ(is_sum_three_squares(n), oracle::three_squares(n)) << n;
  }
}

TEST(SumsOfSquares, MinSquaresIsLagrangeClassification) {
  for (Natural n = 1; n <= 3000; ++n) {
    unsigned expected = oracle::floor_sqrt(n) * oracle::floor_sqrt(n) == n ? 1
                        : oracle::two_squares(n)                           ? 2
                        : oracle::three_squares(n)                         ? 3
                                                                           : 4;
    ASSERT_EQ(min_squares(n), expected) << n;
  }
}

TEST(Tau, Examples) {
  EXPECT_EQ(tau(1), 1u);
  EXPECT_EQ(tau(12), 6u);
  EXPECT_EQ(tau(17), 2u);
  for (Natural n = 1; n <= 2000; ++n) ASSERT_EQ(tau(n), oracle::divisors(n).size());
}

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).pairs.empty());
  EXPECT_EQ(factorize(40).pairs, (std::vector<std::pair<Natural, unsigned>>{{2, 3}, {5, 1}}));
  EXPECT_EQ(factorize(79).pairs, (std::vector<std::pair<Natural, unsigned>>{{79, 1}}));
}

TEST(Factorize, InvariantsOnRandomInputs) {
  auto rng = oracle::rng(1);
  std::uniform_int_distribution<Natural> dist(1, 10'000'000);
  for (int trial = 0; trial < 2000; ++trial) {
    const Natural n = dist(rng);
    const auto f = factorize(n);
    EXPECT_EQ(f.value(), n);
    for (std::size_t i = 0; i < f.pairs.size(); ++i) {
      EXPECT_TRUE(oracle::prime(f.pairs[i].first));
      EXPECT_GE(f.pairs[i].second, 1u);
      if (i > 0) EXPECT_LT(f.pairs[i - 1].first, f.pairs[i].first);
    }
  }
}

TEST(Factorize, RejectsOversizedInput) { EXPECT_THROW(factorize(kMaxFactorInput + 1), std::overflow_error); }

TEST(Primality, AgreesWithTrialDivision) {
  for (Natural n = 0; n <= 20'000; ++n) ASSERT_EQ(is_prime(n), oracle::prime(n)) << n;
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}
