#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "rsq/genus.hpp"
#include "rsq/quadform.hpp"

using namespace rsq;

namespace {

const QuadForm kI3 = QuadForm::identity(3);
const QuadForm kF = ramanujan_form();
const QuadForm kPartner = ramanujan_partner();

oracle::Matrix to_matrix(const QuadForm& f) {
  oracle::Matrix m(f.rank(), std::vector<oracle::i64>(f.rank()));
  for (int i = 0; i < f.rank(); ++i)
    for (int j = 0; j < f.rank(); ++j) m[i][j] = f.entry(i, j);
  return m;
}

IntMatrix to_int_matrix(const oracle::Matrix& m) {
  IntMatrix t = IntMatrix::identity(static_cast<int>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) t(static_cast<int>(i), static_cast<int>(j)) = m[i][j];
  return t;
}

}  // namespace

TEST(QuadForm, Evaluate) {
  EXPECT_EQ(kI3.evaluate({1, 2, 0}), 5);
  EXPECT_EQ(kF.evaluate({0, 0, 1}), 10);
  EXPECT_EQ(kPartner.evaluate({0, 1, -1}), 3);
  EXPECT_THROW(kI3.evaluate({1, 2}), std::invalid_argument);
}

TEST(QuadForm, Discriminant) {
  EXPECT_EQ(kI3.discriminant(), 1);
  EXPECT_EQ(kF.discriminant(), 10);
  EXPECT_EQ(kPartner.discriminant(), 10);
}

TEST(QuadForm, RejectsInvalidGram) {
  EXPECT_THROW(QuadForm({{1, 2}, {3, 1}}), std::invalid_argument);
  EXPECT_THROW(QuadForm({{1, 2}, {2, 1}}), std::invalid_argument);
  EXPECT_THROW(QuadForm({{1, 0, 0}, {0, 1, 0}}), std::invalid_argument);
  EXPECT_THROW(QuadForm::diagonal({1, 0, 1}), std::invalid_argument);
}

TEST(QuadForm, Parse) {
  EXPECT_EQ(QuadForm::parse("1,1,10"), kF);
  EXPECT_EQ(QuadForm::parse(" [[2,0,0],[0,2,1],[0,1,3]] "), kPartner);
  EXPECT_THROW(QuadForm::parse("1,x,10"), std::invalid_argument);
  EXPECT_THROW(QuadForm::parse("[[1,2],[3"), std::invalid_argument);
  EXPECT_THROW(QuadForm::parse(""), std::invalid_argument);
}

TEST(Representations, Examples) {
  const auto ones = representations(kI3, 1);
  EXPECT_EQ(ones.size(), 6u);
  for (const auto& v : ones.vectors) EXPECT_EQ(std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]), 1);
  EXPECT_EQ(representations(kI3, 25).size(), 30u);
  EXPECT_TRUE(representations(kF, 3).empty());
}

TEST(Representations, SortedDistinctAndSymmetric) {
  for (const auto& f : {kI3, kF, kPartner, QuadForm::diagonal({1, 5})}) {
    for (Natural a = 1; a <= 300; ++a) {
      const auto set = representations(f, a);
      ASSERT_TRUE(std::is_sorted(set.vectors.begin(), set.vectors.end()));
      ASSERT_EQ(std::adjacent_find(set.vectors.begin(), set.vectors.end()), set.vectors.end());
      std::set<std::vector<Integer>> all(set.vectors.begin(), set.vectors.end());
      for (const auto& v : set.vectors) {
        ASSERT_EQ(f.evaluate(v), static_cast<Integer>(a));
        std::vector<Integer> neg(v);
        for (auto& x : neg) x = -x;
        ASSERT_TRUE(all.count(neg));
      }
      ASSERT_EQ(set.size() % 2, 0u);
    }
  }
}

TEST(RepCount, Examples) {
  EXPECT_EQ(rep_count(QuadForm::identity(2), 2), 4u);
  EXPECT_EQ(rep_count(kI3, 2), 12u);
  EXPECT_EQ(rep_count(kPartner, 3), 4u);
  EXPECT_EQ(rep_count(kPartner, 2), 4u);
  EXPECT_EQ(rep_count(kF, 2), 4u);
}

TEST(RepCount, DiagonalFormsAgreeWithBoxScan) {
  const Natural limit = 10'000;
  for (const std::vector<Integer>& diag : {std::vector<Integer>{1, 1, 1}, {1, 1, 10}, {1, 1, 5}, {1, 1, 2}}) {
    const auto expected = oracle::diagonal_histogram(diag, limit);
    const auto got = theta_counts(QuadForm::diagonal(diag), limit);
    for (Natural a = 0; a <= limit; ++a) ASSERT_EQ(got[a], expected[a]) << "a=" << a;
  }
  const auto four = oracle::diagonal_histogram({1, 1, 1, 1}, 2000);
  const auto got4 = theta_counts(QuadForm::identity(4), 2000);
  for (Natural a = 0; a <= 2000; ++a) ASSERT_EQ(got4[a], four[a]);
}

TEST(RepCount, NonDiagonalAgreesWithBoxScan) {
  const auto m = to_matrix(kPartner);
  for (Natural a = 0; a <= 120; ++a) ASSERT_EQ(rep_count(kPartner, a), oracle::box_count(m, a, 12)) << a;
  const QuadForm skew({{2, 1, 1}, {1, 3, 0}, {1, 0, 4}});
  const auto ms = to_matrix(skew);
  for (Natural a = 0; a <= 80; ++a) ASSERT_EQ(rep_count(skew, a), oracle::box_count(ms, a, 10)) << a;
}

TEST(RepCount, CeilingGuard) {
  EXPECT_THROW(rep_count(kI3, 1000, 999), ResourceLimit);
  EXPECT_NO_THROW(rep_count(kI3, 1000, 1000));
}

TEST(IsRepresented, Examples) {
  EXPECT_TRUE(is_represented(kF, 5));
  EXPECT_FALSE(is_represented(kF, 3));
  EXPECT_TRUE(is_represented(QuadForm::identity(4), 7));
}

TEST(IsRepresented, RamanujanFormCoversFiveModSix) {
  std::vector<char> hit(30'001, 0);
  for_each_vector_up_to(kF, 30'000, [&](std::span<const Integer>, Natural v) { hit[v] = 1; });
  for (Natural n = 5; n <= 30'000; n += 6) ASSERT_TRUE(hit[n]) << n;
  for (Natural n = 1; n <= 2000; ++n) ASSERT_EQ(is_represented(kF, n), hit[n] != 0) << n;
}

TEST(Automorphisms, OrdersMatchExamples) {
  EXPECT_EQ(automorphisms(kI3).order, 48u);
  EXPECT_EQ(automorphisms(QuadForm::diagonal({1, 1, 5})).order, 16u);
  EXPECT_EQ(automorphisms(kPartner).order, 8u);
  EXPECT_EQ(automorphisms(kF).order, 16u);
}

TEST(Automorphisms, MatricesMatchBruteForce) {
  for (const auto& f : {kI3, QuadForm::diagonal({1, 1, 5}), kF, kPartner, QuadForm::diagonal({1, 5})}) {
    Integer maxdiag = 0;
    for (int i = 0; i < f.rank(); ++i) maxdiag = std::max(maxdiag, f.entry(i, i));
    const auto brute = oracle::isometries(to_matrix(f), static_cast<oracle::i64>(oracle::floor_sqrt(maxdiag)) + 1);
    std::vector<IntMatrix> expected;
    for (const auto& m : brute) expected.push_back(to_int_matrix(m));
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(automorphisms(f).matrices, expected) << f.to_string();
  }
}

TEST(Automorphisms, FormAGroup) {
  for (const auto& f : {kI3, kF, kPartner}) {
    const auto group = automorphisms(f);
    std::set<IntMatrix> elements(group.matrices.begin(), group.matrices.end());
    ASSERT_EQ(elements.size(), group.matrices.size());
    EXPECT_TRUE(elements.count(IntMatrix::identity(f.rank())));
    for (const auto& a : group.matrices) {
      bool has_inverse = false;
      for (const auto& b : group.matrices) {
        ASSERT_TRUE(elements.count(a * b));
        has_inverse = has_inverse || a * b == IntMatrix::identity(f.rank());
      }
      EXPECT_TRUE(has_inverse);
      EXPECT_TRUE(is_isometry(f, a));
    }
  }
}

TEST(Automorphisms, RejectsLargeRank) { EXPECT_THROW(automorphisms(QuadForm::identity(5)), ResourceLimit); }

TEST(Genus, RegistryOrdersAreComputed) {
  for (const auto& entry : genus_registry()) {
    for (const auto& c : entry.classes) {
      EXPECT_EQ(c.form.rank(), entry.classes.front().form.rank());
      EXPECT_EQ(c.form.discriminant(), entry.classes.front().form.discriminant());
      EXPECT_EQ(automorphisms(c.form).order, c.isometry_order) << entry.label;
    }
  }
  EXPECT_EQ(genus_entry("<1,1,10>").class_number(), 2u);
  EXPECT_THROW(genus_entry("<7>"), std::out_of_range);
}

TEST(Genus, MassWeightedCountExamples) {
  EXPECT_EQ(mass_weighted_count(genus_entry("<1,1,10>"), 1), Rational(4, 3));
  EXPECT_EQ(mass_weighted_count(genus_entry("I3"), 2), Rational(12));
  EXPECT_EQ(mass_weighted_count(genus_entry("<1,1,10>"), 3), Rational(8, 3));
  EXPECT_THROW(mass_weighted_count(GenusEntry{"empty", {}}, 1), std::invalid_argument);
}

TEST(Genus, WeightedIdentityForRamanujanGenus) {
  const auto& entry = genus_entry("<1,1,10>");
  for (Natural a = 0; a <= 2000; ++a)
    ASSERT_EQ(3 * mass_weighted_count(entry, a), Rational(rep_count(kF, a) + 2 * rep_count(kPartner, a))) << a;
}
