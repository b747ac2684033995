#include <gtest/gtest.h>

#include "trapdoor/construct/builders.hpp"
#include "trapdoor/construct/freeness.hpp"
#include "trapdoor/construct/nielsen.hpp"
#include "trapdoor/construct/presets.hpp"
#include "trapdoor/verify/closure.hpp"

using namespace trapdoor;

TEST(Shear, MatchesElementaryMatrix) {
  BigMatrix s = shear(1009, 3, 1);
  BigMatrix expect = BigMatrix::identity(3);
  expect(2, 0) = 1009;
  EXPECT_EQ(s, expect);
  EXPECT_EQ(shear(1, 1, 2), BigMatrix::elementary(3, 0, 1, 1));
  EXPECT_THROW(shear(5, 2, 2), Error);
  for (u64 n : {2ull, 7ull, 1009ull, 1000003ull})
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        if (i != j) {
          EXPECT_TRUE(reduce_mod(shear(n, i, j), n).is_identity());
        }
}

TEST(GammaGenerators, SixShearsOfDeterminantOne) {
  auto one = gamma_generators(1);
  ASSERT_EQ(one.size(), 6u);
  for (auto const& g : one) {
    EXPECT_EQ(det(g), 1);
    EXPECT_EQ(g.max_abs_entry(), 1);
  }
  for (auto const& g : gamma_generators(1009)) {
    EXPECT_EQ(det(g), 1);
    EXPECT_TRUE(reduce_mod(g, 1009).is_identity());
  }
}

TEST(Words, FreeReductionAndEvaluation) {
  EXPECT_EQ(free_reduce({1, 2, -2, -1, 2}), (Word{2}));
  EXPECT_EQ(inverse({1, -2}), (Word{2, -1}));
  auto gens = gamma_generators(3);
  Word w{1, 3, -2, 5};
  EXPECT_TRUE((evaluate(w, gens) * evaluate(inverse(w), gens)).is_identity());
}

TEST(Scramble, DepthZeroIsIdentity) {
  Rng rng(1);
  auto gens = gamma_generators(1009);
  auto r = nielsen_scramble(gens, 0, rng, 10);
  EXPECT_EQ(r.generators, gens);
  EXPECT_TRUE(r.log.empty());
}

TEST(Scramble, LogReplaysAndInverts) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    auto gens = gamma_generators(1009);
    gens.push_back(octahedral_s4_generators()[0]);
    auto r = nielsen_scramble(gens, 40, rng, 30);
    EXPECT_EQ(replay(gens, r.log), r.generators);
    EXPECT_EQ(replay_inverse(r.generators, r.log), gens);
    EXPECT_LE(max_entry_digits(r.generators), 30u);
    for (auto const& g : r.generators)
      EXPECT_EQ(det(g), 1);
  }
}

TEST(Scramble, MoveThenInverseIsIdentity) {
  auto gens = gamma_generators(5);
  for (std::size_t i = 0; i < 3; ++i)
    for (int e : {1, -1})
      for (Side side : {Side::left, Side::right}) {
        ScrambleMove mv{i, i + 1, e, side};
        auto g = gens;
        apply_move(g, mv);
        apply_move(g, mv.inverted());
        EXPECT_EQ(g, gens);
      }
}

TEST(Scramble, WordsRewriteThroughLog) {
  Rng rng(4);
  auto gens = gamma_generators(7);
  auto r = nielsen_scramble(gens, 25, rng, 40);
  Word w{1, -3, 4, 6, -2};
  EXPECT_EQ(evaluate(rewrite_through_log(w, gens.size(), r.log), r.generators), evaluate(w, gens));
}

TEST(Scramble, UnreachableBudgetIsReported) {
  Rng rng(2);
  EXPECT_THROW(nielsen_scramble(gamma_generators(1009), 5, rng, 2, 50), Error);
}

TEST(Freeness, TrivialRelations) {
  BigMatrix a = shear(2, 1, 2, 2);
  EXPECT_EQ(freeness_bfs(a, a, 1).status, FreenessStatus::relation_found);
  EXPECT_FALSE(freeness_bfs(BigMatrix::identity(2), a, 3).is_free());
  // Commuting shears: ab = ba.
  EXPECT_FALSE(freeness_bfs(shear(3, 1, 2), shear(3, 1, 3), 4).is_free());
}

TEST(Freeness, SanovPairIsFreeToDepthTen) {
  auto r = freeness_bfs(shear(2, 1, 2, 2), shear(2, 2, 1, 2), 10);
  EXPECT_TRUE(r.is_free());
  EXPECT_GT(r.words_checked, 50000u);
}

TEST(Freeness, FindsTorsionRelation) {
  // S has order 4 in SL(2, Z).
  auto r = freeness_bfs(BigMatrix{{0, -1}, {1, 0}}, BigMatrix{{1, 1}, {0, 1}}, 4);
  EXPECT_EQ(r.status, FreenessStatus::relation_found);
}

TEST(Family1, CertificatesAndExclusions) {
  auto b = build_family1(1000003, KSpec::named("octahedral_s4"), 8, 3);
  auto const& s = b.secret;
  u64 const p = *s.planted_prime;
  auto planted = enumerate_subgroup(s.k_gens, 3, p, 1000);
  ASSERT_EQ(planted.order(), 24u);
  for (auto const& g : b.instance.generators)
    EXPECT_TRUE(planted.contains(reduce_mod(g, p)));
  std::size_t yes = 0;
  for (std::size_t k = 0; k < b.instance.candidates.size(); ++k) {
    auto it = s.word_certificates.find(candidate_id(k));
    if (it != s.word_certificates.end()) {
      ++yes;
      EXPECT_EQ(evaluate(it->second, s.base_generators), b.instance.candidates[k]);
      EXPECT_EQ(evaluate(rewrite_through_log(it->second, s.base_generators.size(), s.scramble_log),
                         b.instance.generators),
                b.instance.candidates[k]);
    } else {
      EXPECT_FALSE(planted.contains(reduce_mod(b.instance.candidates[k], p)));
    }
  }
  EXPECT_GT(yes, 0u);
  EXPECT_LT(yes, 8u);
}

TEST(Family2, FormPreservedAtPlantedPrime) {
  auto b = build_family2(1245509, {3, 1000003, 1000000000000037ull}, 9);
  auto const& q = *b.secret.planted_form;
  EXPECT_EQ(transposed(q), q);
  EXPECT_NE(det_mod(q), 0u);
  for (auto const& g : b.instance.generators) {
    ModMatrix a = reduce_mod(g, 1245509);
    EXPECT_EQ(transposed(a) * q * a, q);
    EXPECT_EQ(det(g), 1);
  }
  EXPECT_EQ(b.instance.primes.size(), 4u);
  EXPECT_THROW(build_family2(2, {3}, 1), Error);
  EXPECT_THROW(build_family2(1245509, {1245509}, 1), Error);
}

TEST(Family3, UnipotentImageAndEntrySize) {
  auto b = build_family3(1009, KSpec::named("upper_unipotent"), {3, 5}, 1);
  EXPECT_EQ(b.instance.generators.size(), 8u);
  EXPECT_GT(max_entry_digits(b.instance.generators), 30u);
  for (auto const& g : b.instance.generators)
    EXPECT_TRUE(is_upper_unitriangular(reduce_mod(g, 1009)));
  EXPECT_THROW(build_family3(1009, KSpec::named("full"), {3}, 1), Error);
  EXPECT_THROW(build_family3(1000, KSpec::named("upper_unipotent"), {3}, 1), Error);
}

TEST(Family4, Variants) {
  auto v1 = build_family4(Variant::v1, 1, KSpec{}, 2);
  EXPECT_EQ(v1.instance.generators.size(), 2u);
  auto v3 = build_family4(Variant::v3, 7, KSpec{}, 2);
  ASSERT_EQ(v3.instance.generators.size(), 2u);
  for (auto const& g : v3.instance.generators)
    EXPECT_TRUE(reduce_mod(g, 7).is_identity());
  EXPECT_TRUE(freeness_bfs(v3.instance.generators[0], v3.instance.generators[1], 10).is_free());
}

TEST(Family5, Catalog) {
  auto all = build_family5();
  ASSERT_EQ(all.size(), 5u);
  auto const& sanov = all[1];
  EXPECT_EQ(sanov.instance.id, "S2_02");
  EXPECT_EQ(sanov.instance.generators[0], (BigMatrix{{1, 2}, {0, 1}}));
  EXPECT_EQ(sanov.instance.generators[1], (BigMatrix{{1, 0}, {2, 1}}));
  for (auto const& b : all)
    EXPECT_EQ(b.instance.dim, 2);
}

TEST(Determinism, SameSeedSameBytes) {
  auto a = build_family3(1009, KSpec::named("upper_unipotent"), {3, 5}, 77);
  auto b = build_family3(1009, KSpec::named("upper_unipotent"), {3, 5}, 77);
  EXPECT_EQ(a.instance, b.instance);
  EXPECT_EQ(a.secret, b.secret);
  auto c = build_family3(1009, KSpec::named("upper_unipotent"), {3, 5}, 78);
  EXPECT_NE(a.instance.generators, c.instance.generators);
  auto d = build_family2(1245509, {3, 5}, 5), e = build_family2(1245509, {3, 5}, 5);
  EXPECT_EQ(d.secret, e.secret);
}

TEST(Determinant, EveryFamilyEmitsSLElements) {
  std::vector<Built> all{build_family1(1000003, KSpec::named("octahedral_s4"), 4, 1),
                         build_family2(1245509, {3}, 1),
                         build_family3(1009, KSpec::named("upper_unipotent"), {3}, 1),
                         build_family4(Variant::v1, 1, KSpec{}, 1),
                         build_family4(Variant::v2, 1009, KSpec::named("octahedral_s4"), 1),
                         build_family4(Variant::v3, 5, KSpec{}, 1)};
  for (auto& b : build_family5(6, 1))
    all.push_back(b);
  for (auto const& b : all) {
    for (auto const& g : b.instance.generators)
      EXPECT_EQ(det(g), 1) << b.instance.id;
    for (auto const& g : b.instance.candidates)
      EXPECT_EQ(det(g), 1) << b.instance.id;
  }
}
