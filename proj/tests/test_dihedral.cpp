#include <gtest/gtest.h>

#include <numeric>

#include "prymcheck/dihedral.hpp"
#include "prymcheck/error.hpp"
#include "prymcheck/formulas.hpp"
#include "support.hpp"

using namespace prymcheck;

namespace {

const MonodromyDatum kBasic{4, 2, {0, 0, 0, 0, 1, 1}};

}  // namespace

TEST(DnMul, Examples) {
  EXPECT_EQ(dn_mul(reflection(2, 8), reflection(3, 8), 8), rotation(1, 8));
  EXPECT_EQ(dn_mul(reflection(0, 8), reflection(0, 8), 8), rotation(0, 8));
  EXPECT_EQ(dn_mul(rotation(3, 8), rotation(7, 8), 8), rotation(2, 8));
}

TEST(DnMul, DefiningRelations) {
  for (std::int64_t n : {2, 3, 5, 8, 12}) {
    DihedralElement p = rotation(0, n);
    for (std::int64_t i = 0; i < n; ++i) p = dn_mul(p, rotation(1, n), n);
    EXPECT_EQ(p, rotation(0, n));
    const auto st = dn_mul(rotation(1, n), reflection(0, n), n);
    EXPECT_EQ(dn_mul(st, st, n), rotation(0, n));
    EXPECT_EQ(rotation(-1, n).exponent, n - 1);
  }
}

TEST(DnClass, Examples) {
  const auto even = dn_class(reflection(2, 8), 8);
  EXPECT_EQ(even.kind, ConjugacyClass::Kind::reflection);
  EXPECT_EQ(even, dn_class(reflection(0, 8), 8));
  const auto half = dn_class(rotation(4, 8), 8);
  EXPECT_EQ(half.kind, ConjugacyClass::Kind::rotation);
  EXPECT_EQ(half.label, 4);
  EXPECT_EQ(dn_class(reflection(3, 6), 6), dn_class(reflection(1, 6), 6));
  EXPECT_NE(dn_class(reflection(3, 6), 6), dn_class(reflection(0, 6), 6));
}

TEST(DnClass, AgreesWithConjugateEnumeration) {
  for (std::int64_t n : {5, 6, 8, 12}) {
    for (std::size_t a = 0; a < static_cast<std::size_t>(2 * n); ++a) {
      for (std::size_t b = 0; b < static_cast<std::size_t>(2 * n); ++b) {
        const auto x = element_from_id(a, n);
        const auto y = element_from_id(b, n);
        bool conjugate = false;
        for (std::size_t c = 0; c < static_cast<std::size_t>(2 * n) && !conjugate; ++c) {
          const auto g = element_from_id(c, n);
          conjugate = dn_mul(dn_mul(g, x, n), dn_inverse(g, n), n) == y;
        }
        EXPECT_EQ(conjugate, dn_class(x, n) == dn_class(y, n)) << n << " " << a << " " << b;
      }
    }
  }
}

TEST(Subgroups, NominalOrders) {
  const std::int64_t n = 24;
  EXPECT_EQ(SubgroupSpec::rotation(3).elements(n).size(), 8U);
  EXPECT_EQ(SubgroupSpec::reflection(5).elements(n).size(), 2U);
  EXPECT_EQ(SubgroupSpec::klein(1).elements(n).size(), 4U);
  EXPECT_EQ(SubgroupSpec::dihedral8(3).elements(n).size(), 8U);
  EXPECT_EQ(SubgroupSpec::full().elements(n).size(), 48U);
  EXPECT_THROW((void)SubgroupSpec::klein(0).elements(5), InputError);
  EXPECT_THROW((void)SubgroupSpec::dihedral8(0).elements(6), InputError);
}

TEST(Validate, Examples) {
  EXPECT_EQ(validate_datum(kBasic), DatumStatus::valid);
  EXPECT_EQ(validate_datum({4, 2, {0, 0, 0, 0, 1, 3}}), DatumStatus::product);
  EXPECT_EQ(validate_datum({4, 2, {0, 0, 2, 2, 0, 2}}), DatumStatus::generation);
  EXPECT_EQ(validate_datum({4, 2, {0, 0, 1, 1}}), DatumStatus::length);
  EXPECT_EQ(validate_datum({1, 2, {0, 0, 0, 0, 0, 0}}), DatumStatus::bad_parameters);
}

TEST(Validate, GenerationMatchesTransitivity) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 11);
    MonodromyDatum d{n, 2, std::vector<std::int64_t>(6)};
    for (auto& k : d.exponents) k = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
    const bool transitive = coset_action(d, SubgroupSpec::trivial()).is_transitive();
    const auto status = validate_datum(d);
    EXPECT_EQ(transitive, status != DatumStatus::generation) << seed;
    // generation is checked before the product
    if (!coset_action(d, SubgroupSpec::trivial()).product_is_identity()) {
      EXPECT_TRUE(status == DatumStatus::product || status == DatumStatus::generation) << seed;
    }
  }
}

TEST(ParityCounts, Examples) {
  const auto a = branch_parity_counts(kBasic);
  EXPECT_EQ(a.s0, 4);
  EXPECT_EQ(a.s1, 2);
  const auto b = branch_parity_counts({8, 2, {0, 0, 1, 1, 3, 3}});
  EXPECT_EQ(b.s0, 2);
  EXPECT_EQ(b.s1, 4);
  const auto c = branch_parity_counts(sample_datum(3, 2, 7).datum);
  EXPECT_EQ(c.s0, 6);
  EXPECT_EQ(c.s1, 0);
}

TEST(CosetAction, Examples) {
  const auto full = coset_action(kBasic, SubgroupSpec::full());
  EXPECT_EQ(full.degree, 1U);
  const auto regular = coset_action(kBasic, SubgroupSpec::trivial());
  EXPECT_EQ(regular.degree, 8U);
  EXPECT_TRUE(regular.is_transitive());
  const auto rot = coset_action(kBasic, SubgroupSpec::rotation(1));
  EXPECT_EQ(rot.degree, 2U);
  for (const auto& p : rot.generators) EXPECT_EQ(p, (std::vector<std::uint32_t>{1, 0}));
}

TEST(FixedPoints, Examples) {
  EXPECT_EQ(fixed_point_count(5, SubgroupSpec::reflection(0), reflection(0, 5)), 1U);
  EXPECT_EQ(fixed_point_count(4, SubgroupSpec::reflection(0), reflection(0, 4)), 2U);
  EXPECT_EQ(fixed_point_count(4, SubgroupSpec::reflection(0), reflection(1, 4)), 0U);
}

TEST(QuotientGenus, Examples) {
  EXPECT_EQ(quotient_genus(kBasic, SubgroupSpec::trivial()), 5);
  EXPECT_EQ(quotient_genus(kBasic, SubgroupSpec::rotation(1)), 2);
  EXPECT_EQ(quotient_genus(kBasic, SubgroupSpec::reflection(0)), 1);
}

TEST(Sample, DeterministicAndValid) {
  const auto a = sample_datum(4, 2, 1);
  const auto b = sample_datum(4, 2, 1);
  EXPECT_EQ(a.datum, b.datum);
  EXPECT_EQ(a.datum.exponents.size(), 6U);
  EXPECT_EQ(validate_datum(a.datum), DatumStatus::valid);
  EXPECT_EQ(validate_datum(sample_datum(3, 2, 7).datum), DatumStatus::valid);
}

// Properties over sampled data.

class SampledData : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  MonodromyDatum datum() const {
    const auto s = testing_support::mix(GetParam());
    const std::int64_t n = 2 + static_cast<std::int64_t>(s % 15);
    const std::int64_t g = 2 + static_cast<std::int64_t>((s >> 8) % 2);
    return sample_datum(n, g, s).datum;
  }
};

TEST_P(SampledData, BranchCountsAreEvenAndPositive) {
  const auto d = datum();
  const auto c = branch_parity_counts(d);
  EXPECT_EQ(c.s0 + c.s1, 2 * d.genus + 2);
  if (d.n % 2 == 0) {
    EXPECT_EQ(c.s0 % 2, 0);
    EXPECT_EQ(c.s1 % 2, 0);
    EXPECT_GE(c.s0, 2);
    EXPECT_GE(c.s1, 2);
  }
}

TEST_P(SampledData, ProductOfGeneratorsIsIdentityEverywhere) {
  const auto d = datum();
  std::vector<SubgroupSpec> specs{SubgroupSpec::trivial(), SubgroupSpec::rotation(1), SubgroupSpec::reflection(0),
                                  SubgroupSpec::full()};
  if (d.n % 2 == 0) specs.push_back(SubgroupSpec::klein(1));
  for (const auto& s : specs) EXPECT_TRUE(coset_action(d, s).product_is_identity()) << s.to_string();
}

// Riemann-Hurwitz for the group quotient X -> X/S, using fixed points of each
// nontrivial s in S counted directly on the sheets over each branch point.
TEST_P(SampledData, GenusMatchesGroupHurwitz) {
  const auto d = datum();
  const auto n = d.n;
  const auto gx = n * (d.genus - 1) + 1;
  std::vector<SubgroupSpec> specs{SubgroupSpec::trivial(), SubgroupSpec::rotation(1), SubgroupSpec::reflection(0),
                                  SubgroupSpec::reflection(1)};
  if (n % 2 == 0) {
    specs.push_back(SubgroupSpec::rotation(n / 2));
    specs.push_back(SubgroupSpec::klein(0));
    specs.push_back(SubgroupSpec::klein(1));
  }
  if (n % 4 == 0) specs.push_back(SubgroupSpec::dihedral8(1));
  for (const auto& s : specs) {
    const auto members = s.elements(n);
    std::int64_t fixed = 0;
    for (const auto& e : members) {
      if (e == rotation(0, n)) continue;
      // A point over branch i on sheet h is fixed by left multiplication by e
      // iff h^{-1} e h lies in <g_i>; each such point has 2 sheets.
      for (std::size_t i = 0; i < d.branch_count(); ++i) {
        std::int64_t sheets = 0;
        for (std::size_t id = 0; id < static_cast<std::size_t>(2 * n); ++id) {
          const auto h = element_from_id(id, n);
          if (dn_mul(dn_mul(dn_inverse(h, n), e, n), h, n) == d.local_monodromy(i)) ++sheets;
        }
        fixed += sheets / 2;
      }
    }
    const auto order = static_cast<std::int64_t>(members.size());
    const auto twice = (2 * gx - 2 - fixed) / order + 2;
    EXPECT_EQ((2 * gx - 2 - fixed) % order, 0) << s.to_string();
    EXPECT_EQ(quotient_genus(d, s) * 2, twice) << s.to_string();
  }
}

TEST_P(SampledData, TwoPointFibreFixedPoints) {
  const auto d = datum();
  const auto n = d.n;
  for (auto k : d.exponents) {
    const auto a = fixed_point_count(n, SubgroupSpec::reflection(k), reflection(0, n));
    const auto b = fixed_point_count(n, SubgroupSpec::reflection(k), reflection(1, n));
    if (n % 2 == 1) {
      EXPECT_EQ(a, 1U);
      EXPECT_EQ(b, 1U);
    } else {
      EXPECT_EQ(a + b, 2U);
      EXPECT_TRUE(a == 0 || b == 0);
      EXPECT_EQ(a == 2, k % 2 == 0);
    }
  }
}

TEST_P(SampledData, BasicGenera) {
  const auto d = datum();
  EXPECT_EQ(quotient_genus(d, SubgroupSpec::trivial()), d.n * (d.genus - 1) + 1);
  EXPECT_EQ(quotient_genus(d, SubgroupSpec::rotation(1)), d.genus);
  EXPECT_EQ(quotient_genus(d, SubgroupSpec::full()), 0);
  if (d.n % 2 == 0) {
    const auto c = branch_parity_counts(d);
    EXPECT_EQ(quotient_genus(d, SubgroupSpec::rotation(d.n / 2)) - 1, d.n / 2 * (d.genus - 1));
    const auto gx = quotient_genus(d, SubgroupSpec::trivial());
    const auto m = two_adic_split(d.n).m;
    EXPECT_EQ((2 * gx - 2) - 2 * (2 * quotient_genus(d, SubgroupSpec::reflection(0)) - 2), 2 * c.s0);
    EXPECT_EQ((2 * gx - 2) - 2 * (2 * quotient_genus(d, SubgroupSpec::reflection(m)) - 2), 2 * c.s1);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SampledData, ::testing::Range<std::uint64_t>(0, 60));
