#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "rsq/arith.hpp"
#include "rsq/genus.hpp"
#include "rsq/localdensity.hpp"

using namespace rsq;

namespace {

// #{x mod p^j : f(x) = n mod p^j} / p^(2j) for the diagonal ternary form,
// cached per (form, p, j).
Rational counted_density(const std::array<Integer, 3>& diag, Natural n, Natural p, unsigned j) {
  static std::map<std::tuple<std::array<Integer, 3>, Natural, unsigned>, std::vector<oracle::u64>> cache;
  const Natural q = ipow(p, j);
  auto key = std::make_tuple(diag, p, j);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, oracle::diagonal_solution_counts(diag, q)).first;
  return Rational(BigInt(it->second[n % q]), big_pow(BigInt(q), 2));
}

}  // namespace

TEST(AlphaP, Examples) {
  EXPECT_EQ(alpha_p(1, QuadForm::identity(3), 5), Rational(6, 5));
  EXPECT_EQ(alpha_p(1, QuadForm::identity(3), 7), Rational(6, 7));
  EXPECT_EQ(alpha_p(5, QuadForm::identity(3), 5), Rational(24, 25));
}

TEST(AlphaP, RejectsBadPrimes) {
  EXPECT_THROW(alpha_p(1, QuadForm::diagonal({1, 1, 5}), 5), std::invalid_argument);
  EXPECT_THROW(alpha_p(1, QuadForm::identity(3), 2), std::invalid_argument);
  EXPECT_THROW(alpha_p(1, QuadForm::identity(3), 9), std::invalid_argument);
  EXPECT_THROW(alpha_p(1, QuadForm::identity(2), 5), std::invalid_argument);
}

TEST(AlphaP, AgreesWithCongruenceCounting) {
  struct Case {
    std::array<Integer, 3> diag;
    Natural p;
    Natural max_n;
  };
  for (const auto& [diag, p, max_n] : {Case{{1, 1, 1}, 5, 200}, Case{{1, 1, 1}, 7, 200}, Case{{1, 1, 5}, 7, 200},
                                       Case{{1, 1, 2}, 5, 150}, Case{{1, 1, 10}, 3, 200}, Case{{1, 1, 1}, 11, 60}}) {
    const QuadForm f = QuadForm::diagonal({diag[0], diag[1], diag[2]});
    for (Natural n = 1; n <= max_n; ++n) {
      const unsigned j = ord(n, p) + 2;
      if (ipow(p, j) > 100'000) continue;
      ASSERT_EQ(alpha_p(n, f, p), counted_density(diag, n, p, j)) << f.to_string() << " n=" << n << " p=" << p;
    }
  }
}

TEST(GenusRatio, Examples) {
  EXPECT_EQ(genus_ratio(1, 5, 1), Rational(5));
  EXPECT_EQ(genus_ratio(2, 5, 1), Rational(7));
  EXPECT_EQ(genus_ratio(3, 7, 1), Rational(7));
  EXPECT_THROW(genus_ratio(1, 5, 10), std::invalid_argument);
}

TEST(GenusRatio, UnitCaseIsPPlusOneMinusChi) {
  for (Natural p : {3, 7, 11, 13, 17})
    for (Natural n = 1; n <= 300; ++n) {
      if (n % p == 0) continue;
      const int chi = oracle::legendre_table(-static_cast<Integer>(n) * 10, static_cast<Integer>(p));
      ASSERT_EQ(genus_ratio(n, p, 10), Rational(static_cast<Integer>(p) + 1 - chi)) << n << " " << p;
    }
}

TEST(GenusRatio, AlwaysAboveOne) {
  for (Natural p : {3, 7, 11, 13})
    for (Natural n = 1; n <= 3000; ++n) ASSERT_GT(genus_ratio(n, p, 10), Rational(1));
}

TEST(GenusRatio, MatchesClassNumberOneCounts) {
  const Natural bound = 20'000;
  for (const std::vector<Integer>& diag : {std::vector<Integer>{1, 1, 1}, {1, 1, 5}, {1, 1, 2}}) {
    const auto r = oracle::diagonal_histogram(diag, bound);
    const Integer df = diag[0] * diag[1] * diag[2];
    for (Natural p : {5, 7, 11, 13}) {
      if ((2 * df) % static_cast<Integer>(p) == 0) continue;
      for (Natural n = 1; p * p * n <= bound; ++n) {
        if (r[n] == 0) continue;
        ASSERT_EQ(Rational(r[p * p * n], r[n]), genus_ratio(n, p, df)) << n << " " << p;
      }
    }
  }
}

TEST(GenusRatio, MatchesGenusAverageForRamanujanGenus) {
  const auto& entry = genus_entry("<1,1,10>");
  for (Natural p : {3, 7, 11, 13})
    for (Natural n = 1; p * p * n <= 5000; ++n) {
      const Rational small = mass_weighted_count(entry, n);
      if (small == 0) continue;
      ASSERT_EQ(mass_weighted_count(entry, p * p * n) / small, genus_ratio(n, p, 10)) << n << " " << p;
    }
}

TEST(ClassOneGrowth, Examples) {
  EXPECT_TRUE(check_class1_growth(QuadForm::identity(3), 1, 5));
  EXPECT_TRUE(check_class1_growth(QuadForm::diagonal({1, 1, 5}), 7, 3));
  EXPECT_TRUE(check_class1_growth(QuadForm::identity(3), 2, 7));
  EXPECT_EQ(rep_count(QuadForm::diagonal({1, 1, 5}), 63), oracle::diagonal_count({1, 1, 5}, 63));
  EXPECT_GT(oracle::diagonal_count({1, 1, 5}, 63), oracle::diagonal_count({1, 1, 5}, 7));
}
