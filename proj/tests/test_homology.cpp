#include <gtest/gtest.h>

#include "prymcheck/error.hpp"
#include "prymcheck/formulas.hpp"
#include "prymcheck/homology.hpp"
#include "prymcheck/prym.hpp"
#include "support.hpp"

using namespace prymcheck;

namespace {

const MonodromyDatum kBasic{4, 2, {0, 0, 0, 0, 1, 1}};

}  // namespace

TEST(Transversal, DegreeOneAndRegular) {
  PermutationAction one{1, {{0}, {0}, {0}, {0}, {0}, {0}}};
  const auto t1 = schreier_transversal(one);
  ASSERT_EQ(t1.words.size(), 1U);
  EXPECT_TRUE(t1.words[0].empty());
  const auto t = schreier_transversal(coset_action(kBasic, SubgroupSpec::trivial()));
  EXPECT_EQ(t.words.size(), 8U);
  EXPECT_TRUE(t.words[0].empty());
  // prefix-closed
  for (const auto& w : t.words) {
    if (w.empty()) continue;
    const Word prefix(w.begin(), w.end() - 1);
    EXPECT_NE(std::find(t.words.begin(), t.words.end(), prefix), t.words.end());
  }
}

TEST(Rewrite, EmptyUnitAndAdditive) {
  const SchreierRewriter rw(coset_action(kBasic, SubgroupSpec::trivial()));
  EXPECT_EQ(rw.generator_count(), 8U * (6 - 2) + 1);
  const auto zero = rw.rewrite({});
  for (const auto& v : zero) EXPECT_EQ(v, 0);
  for (std::size_t k = 0; k < rw.generator_count(); ++k) {
    const auto v = rw.rewrite(rw.generator_word(k));
    for (std::size_t j = 0; j < v.size(); ++j) EXPECT_EQ(v[j], j == k ? 1 : 0);
  }
  const auto& a = rw.generator_word(3);
  const auto& b = rw.generator_word(11);
  const auto ab = rw.rewrite(concat(a, b));
  const auto va = rw.rewrite(a);
  const auto vb = rw.rewrite(b);
  for (std::size_t j = 0; j < ab.size(); ++j) EXPECT_EQ(ab[j], va[j] + vb[j]);
  const auto inv = rw.rewrite(inverse(a));
  for (std::size_t j = 0; j < inv.size(); ++j) EXPECT_EQ(inv[j], -va[j]);
  EXPECT_THROW((void)rw.rewrite({1}), InputError);
}

TEST(Homology, Examples) {
  EXPECT_EQ(homology_lattice(kBasic).rank(), 10U);
  EXPECT_EQ(homology_lattice(sample_datum(2, 2, 3).datum).rank(), 6U);
  const auto lat = homology_lattice({8, 2, {0, 0, 0, 0, 1, 1}});
  EXPECT_EQ(lat.rank(), 18U);
  EXPECT_EQ(characteristic_polynomial(lat.sigma()), expected_sigma_charpoly(8, 2));
}

TEST(Deck, Examples) {
  const auto lat = homology_lattice(kBasic);
  EXPECT_TRUE(lat.deck(rotation(0, 4)).is_identity());
  EXPECT_TRUE(power(lat.sigma(), 4).is_identity());
  EXPECT_FALSE(power(lat.sigma(), 2).is_identity());
  EXPECT_EQ(abs(determinant(lat.sigma())), 1);
  EXPECT_EQ(lat.tau().trace(), -6);
}

TEST(Deck, RejectsInvalidDatum) {
  EXPECT_THROW((void)homology_lattice({4, 2, {0, 0, 0, 0, 1, 3}}), InputError);
}

class HomologyProperties : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  MonodromyDatum datum() const {
    const auto s = testing_support::mix(GetParam() + 1000);
    const std::int64_t n = 2 + static_cast<std::int64_t>(s % 11);
    const std::int64_t g = 2 + static_cast<std::int64_t>((s >> 9) % 2);
    return sample_datum(n, g, s).datum;
  }
};

TEST_P(HomologyProperties, RankAndNoTorsion) {
  const auto d = datum();
  const auto lat = homology_lattice(d, false);
  EXPECT_EQ(lat.rank(), static_cast<std::size_t>(2 * quotient_genus(d, SubgroupSpec::trivial())));
  const auto s = snf(lat.presentation().relations);
  for (const auto& f : s.factors) EXPECT_EQ(f, 1);
  EXPECT_EQ(lat.presentation().generator_count - s.factors.size(), lat.rank());
}

TEST_P(HomologyProperties, DihedralRelationsAndMultiplicativity) {
  const auto d = datum();
  const auto n = d.n;
  const auto lat = homology_lattice(d, false);
  const auto& s = lat.sigma();
  const auto& t = lat.tau();
  EXPECT_TRUE(power(s, static_cast<unsigned>(n)).is_identity());
  EXPECT_TRUE((t * t).is_identity());
  EXPECT_TRUE((t * s * t * s).is_identity());
  for (std::size_t a = 0; a < static_cast<std::size_t>(2 * n); a += 3) {
    for (std::size_t b = 1; b < static_cast<std::size_t>(2 * n); b += 2) {
      const auto ea = element_from_id(a, n);
      const auto eb = element_from_id(b, n);
      EXPECT_EQ(lat.deck(dn_mul(ea, eb, n)), lat.deck(ea) * lat.deck(eb));
    }
  }
  for (std::size_t id = 0; id < static_cast<std::size_t>(2 * n); ++id) {
    EXPECT_EQ(abs(determinant(lat.deck(element_from_id(id, n)))), 1);
    EXPECT_EQ(deck_matrix(lat, element_from_id(id, n)), lat.deck(element_from_id(id, n)));
  }
}

TEST_P(HomologyProperties, CharacteristicPolynomialOfSigma) {
  const auto d = datum();
  const auto lat = homology_lattice(d, false);
  EXPECT_EQ(characteristic_polynomial(lat.sigma()), expected_sigma_charpoly(d.n, d.genus));
}

TEST_P(HomologyProperties, LefschetzTraces) {
  const auto d = datum();
  const auto n = d.n;
  const auto lat = homology_lattice(d, false);
  const auto c = branch_parity_counts(d);
  for (std::size_t id = 1; id < static_cast<std::size_t>(2 * n); ++id) {
    const auto e = element_from_id(id, n);
    const Integer tr = lat.deck(e).trace();
    EXPECT_EQ(Integer(2) - tr, deck_fixed_points(d, e)) << to_string(e);
    if (!e.reflected) {
      EXPECT_EQ(tr, 2);
    } else if (n % 2 == 1) {
      EXPECT_EQ(tr, 2 - (2 * d.genus + 2));
    } else {
      EXPECT_EQ(tr, 2 - 2 * (e.exponent % 2 == 0 ? c.s0 : c.s1));
    }
  }
}

TEST_P(HomologyProperties, TwoLiftsAgree) {
  const auto d = datum();
  const auto lat = homology_lattice(d, false);
  // x_1 x_2 has monodromy g_1 g_2; so does the padded word.
  const auto g = dn_mul(d.local_monodromy(0), d.local_monodromy(1), d.n);
  const Word direct{1, 2};
  const Word padded{1, 3, -3, 2, 4, 4};  // x_4^2 is trivial in D_n
  EXPECT_EQ(lat.deck_via_lift(g, direct), lat.deck_via_lift(g, padded));
  EXPECT_EQ(lat.deck_via_lift(g, direct), lat.deck(g));
}

INSTANTIATE_TEST_SUITE_P(Seeds, HomologyProperties, ::testing::Range<std::uint64_t>(0, 40));

// The cellular model is an independent construction of H_1 with its deck
// action. Basis-free quantities must agree with the Reidemeister-Schreier
// lattice: rank, traces, and the indices that define the isogeny degrees.

class CellularOracle : public ::testing::TestWithParam<MonodromyDatum> {};

TEST_P(CellularOracle, RankTracesAndCharpolys) {
  const auto& d = GetParam();
  const auto n = d.n;
  const auto lat = homology_lattice(d);
  const auto cell = testing_support::cellular_homology(d);
  ASSERT_EQ(cell.rank, lat.rank());
  for (std::size_t id = 0; id < static_cast<std::size_t>(2 * n); ++id) {
    const auto e = element_from_id(id, n);
    EXPECT_EQ(characteristic_polynomial(cell.of(e, n)), characteristic_polynomial(lat.deck(e))) << to_string(e);
  }
}

TEST_P(CellularOracle, IsogenyIndices) {
  const auto& d = GetParam();
  const auto n = d.n;
  const auto lat = homology_lattice(d);
  const auto cell = testing_support::cellular_homology(d);
  const auto id = IntegerMatrix::identity(cell.rank);
  auto fixed = [&](std::initializer_list<DihedralElement> es) {
    IntegerMatrix stack(0, cell.rank);
    for (auto e : es) stack = IntegerMatrix::vstack(stack, cell.of(e, n) - id);
    return kernel_lattice(stack);
  };
  IntegerMatrix norm(cell.rank, cell.rank);
  for (std::int64_t j = 0; j < n; ++j) norm = norm + cell.of(rotation(j, n), n);
  const auto prym = kernel_lattice(norm);
  const auto hyper = fixed({rotation(1, n)});
  const auto full = Sublattice::full(cell.rank);

  // f*JH x P(f) -> JX
  ClaimVerifier v(d);
  const auto lem = v.verify(ClaimId::lem26).front();
  EXPECT_EQ(lem.oracle, to_string(testing_support::gram_index(lattice_sum(hyper, prym).basis(), full.basis())));

  if (n % 4 == 0) {
    // deg a with the odd reflection tau*sigma.
    const auto jt = fixed({reflection(0, n)});
    const auto jts = fixed({reflection(1, n)});
    const auto sum = lattice_sum(jt, jts);
    ASSERT_EQ(sum.rank(), prym.rank());
    const auto a_cell = testing_support::gram_index(sum.basis(), prym.basis());
    const auto thm = v.verify(ClaimId::thm41).front();
    EXPECT_EQ(thm.oracle, to_string(a_cell));

    // deg h = [L_B : (1 + tau sigma^m) L_A] with the literal exponent.
    const auto m = two_adic_split(n).m;
    const auto half = rotation(n / 2, n);
    const auto a_lat = kernel_lattice(
        IntegerMatrix::vstack(cell.of(reflection(n / 2, n), n) - id, cell.of(reflection(0, n), n) + id));
    const auto b_lat =
        kernel_lattice(IntegerMatrix::vstack(cell.of(reflection(m, n), n) - id, cell.of(half, n) + id));
    const auto image = apply(id + cell.of(reflection(m, n), n), a_lat);
    const auto prop = v.verify(ClaimId::prop32).front();
    EXPECT_EQ(prop.oracle, to_string(testing_support::gram_index(image.basis(), b_lat.basis())));
  }
}

INSTANTIATE_TEST_SUITE_P(
    Data, CellularOracle,
    ::testing::Values(MonodromyDatum{3, 2, {0, 0, 0, 0, 1, 1}}, MonodromyDatum{4, 2, {0, 0, 0, 0, 1, 1}},
                      MonodromyDatum{4, 2, {0, 0, 1, 1, 1, 1}}, MonodromyDatum{6, 2, {0, 0, 0, 0, 1, 1}},
                      MonodromyDatum{8, 2, {0, 0, 0, 0, 1, 1}}, MonodromyDatum{8, 2, {0, 0, 1, 1, 3, 3}},
                      MonodromyDatum{8, 2, {0, 3, 2, 1, 6, 4}}, MonodromyDatum{12, 2, {0, 0, 0, 0, 1, 1}},
                      MonodromyDatum{16, 2, {0, 0, 0, 0, 1, 1}}, MonodromyDatum{4, 3, {0, 0, 0, 0, 1, 1, 2, 2}}));
