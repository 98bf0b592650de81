#include "brute.hpp"

#include <gtest/gtest.h>

using namespace hkl;
using hkl::testing::group;

namespace {

const LaurentPoly q = LaurentPoly::q();

Coefficients indicator(Element w) { return {{w, LaurentPoly(1)}}; }

HeckeElement recombine(const KLCache& cache, const Coefficients& c, const HybridBasisSpec& spec) {
  HeckeElement h(cache.system());
  for (const auto& [x, p] : c) h.add_scaled(p, hybrid_element(cache, spec, x));
  return h;
}

TEST(HybridElement, ExtremeSubsets) {
  auto sys = group("B3");
  KLCache cache(sys);
  for (Element w : sys->enumerate()) {
    EXPECT_EQ(hybrid_element(cache, {GeneratorSet{}, Orientation::TC}, w), HeckeElement(*sys, w));
    EXPECT_EQ(hybrid_element(cache, {GeneratorSet{}, Orientation::CT}, w), HeckeElement(*sys, w));
    EXPECT_EQ(hybrid_element(cache, {sys->all_generators(), Orientation::TC}, w), cache.element(w));
    EXPECT_EQ(hybrid_element(cache, {sys->all_generators(), Orientation::CT}, w), cache.element(w));
  }
}

TEST(HybridElement, SingleGenerator) {
  auto sys = group("A3");
  KLCache cache(sys);
  for (Element w : sys->enumerate()) {
    const Element ws1 = sys->mul_right(w, 1);
    if (sys->length(ws1) > sys->length(w)) continue;
    HeckeElement expected(*sys, w);
    expected.add(ws1, q);
    EXPECT_EQ(hybrid_element(cache, {GeneratorSet{1}, Orientation::TC}, w), expected);
  }
}

TEST(HybridElement, RankTwoParabolic) {
  auto sys = group("A3");
  KLCache cache(sys);
  const GeneratorSet J{1, 2};
  HeckeElement ts2_plus_q(*sys, sys->generator(2));
  ts2_plus_q.add(kIdentity, q);
  for (Element u : sys->min_coset_reps(J, Side::Left)) {
    const Element w = sys->multiply(u, sys->parse_word("2,1"));
    EXPECT_EQ(hybrid_element(cache, {J, Orientation::TC}, w),
              HeckeElement(*sys, u) * ts2_plus_q * cache.element(sys->generator(1)));
    // and in the TC^{1} basis: TC_{us2s1} + q TC_{us1}
    Coefficients expected{{w, LaurentPoly(1)}, {sys->multiply(u, sys->generator(1)), q}};
    EXPECT_EQ(expand_in_hybrid(cache, hybrid_element(cache, {J, Orientation::TC}, w), {GeneratorSet{1}, Orientation::TC}), expected);
  }
}

TEST(HybridElement, Unitriangular) {
  for (const char* t : {"A3", "I2(6)", "B3"}) {
    auto sys = group(t);
    KLCache cache(sys);
    EXPECT_TRUE(verify::check_hybrid_unitriangular(cache).passed) << t;
  }
}

TEST(HybridElement, CTIsPsiOfTC) {
  for (const char* t : {"A3", "I2(6)"}) {
    auto sys = group(t);
    KLCache cache(sys);
    const auto r = verify::check_psi_transport(cache);
    EXPECT_TRUE(r.passed) << t << ": " << r.detail;
  }
}

TEST(HybridExpand, BasisSelfExpansion) {
  auto sys = group("A3");
  KLCache cache(sys);
  for (std::uint32_t m = 0; m < 8; ++m)
    for (Orientation o : {Orientation::TC, Orientation::CT})
      for (Element w : sys->enumerate()) {
        const HybridBasisSpec spec{GeneratorSet(m), o};
        EXPECT_EQ(expand_in_hybrid(cache, hybrid_element(cache, spec, w), spec), indicator(w));
      }
}

TEST(HybridExpand, KLColumnAndInverse) {
  auto sys = group("A3");
  KLCache cache(sys);
  for (Element w : sys->enumerate()) {
    Coefficients column(cache.element(w).terms().begin(), cache.element(w).terms().end());
    EXPECT_EQ(expand_in_hybrid(cache, cache.element(w), {GeneratorSet{}, Orientation::TC}), column);
  }
  const Element s = sys->generator(2);
  EXPECT_EQ(expand_in_hybrid(cache, HeckeElement(*sys, s), {sys->all_generators(), Orientation::TC}),
            (Coefficients{{s, LaurentPoly(1)}, {kIdentity, -q}}));
  // inverse KL columns: sum_x c_x C_x = T_w
  for (Element w : sys->enumerate()) {
    const Coefficients c = expand_in_hybrid(cache, HeckeElement(*sys, w), {sys->all_generators(), Orientation::TC});
    EXPECT_EQ(recombine(cache, c, {sys->all_generators(), Orientation::TC}), HeckeElement(*sys, w));
  }
}

TEST(HybridExpand, RandomRoundTrip) {
  for (const char* t : {"A3", "B3", "I2(5)"}) {
    auto sys = group(t);
    KLCache cache(sys);
    std::mt19937_64 rng(29);
    for (int i = 0; i < 40; ++i) {
      const HeckeElement h = hkl::testing::random_hecke(rng, *sys, 4);
      const HybridBasisSpec spec{hkl::testing::random_subset(rng, *sys), i % 2 ? Orientation::CT : Orientation::TC};
      EXPECT_EQ(recombine(cache, expand_in_hybrid(cache, h, spec), spec), h) << t;
    }
  }
}

TEST(HybridRestriction, Examples) {
  auto sys = group("A3");
  KLCache cache(sys);
  const GeneratorSet J{1, 3};
  for (int s : {1, 3}) EXPECT_EQ(restriction_coeffs(cache, kIdentity, sys->generator(s), J), indicator(sys->generator(s)));
  for (Element w : sys->enumerate())
    for (Element u : sys->min_coset_reps(J, Side::Left))
      if (!sys->bruhat_leq(u, sys->parabolic_factorize_left(w, J).first))
        EXPECT_TRUE(restriction_coeffs(cache, u, w, J).empty());
}

TEST(HybridRestriction, TypeAShiftedCoset) {
  for (int n : {3, 4}) {
    auto sys = group("A" + std::to_string(n));
    KLCache cache(sys);
    const GeneratorSet J = GeneratorSet::first(n - 1);
    Word top, from2;
    for (int k = 1; k <= n; ++k) top.push_back(k);
    for (int k = 2; k <= n; ++k) from2.push_back(k);
    const Element u = sys->from_word(from2);
    int seen = 0;
    for (Element w : sys->enumerate()) {
      auto [quot, par] = sys->parabolic_factorize_left(w, J);
      if (quot != sys->from_word(top)) continue;
      ++seen;
      EXPECT_EQ(restriction_coeffs(cache, u, w, J), (Coefficients{{par, q}}));
    }
    EXPECT_GT(seen, 0);
  }
}

TEST(HybridRestriction, RejectsNonMinimalU) {
  auto sys = group("A2");
  KLCache cache(sys);
  try {
    restriction_coeffs(cache, sys->generator(1), sys->generator(2), GeneratorSet{1});
    FAIL();
  } catch (const domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("s1"), std::string::npos);
  }
}

TEST(HybridRestriction, AgreesWithHybridExpansion) {
  auto sys = group("B3");
  KLCache cache(sys);
  EXPECT_TRUE(verify::check_restriction_matches_hybrid(cache).passed);
}

TEST(HybridRestriction, ParabolicSubgroupKLAgrees) {
  // KL polynomials of W_J computed inside W agree with those of the standalone group
  auto a3 = group("A3");
  auto a2 = group("A2");
  KLCache big(a3), small(a2);
  for (Element x : a2->enumerate())
    for (Element w : a2->enumerate())
      EXPECT_EQ(big.poly(a3->from_word(a2->word(x)), a3->from_word(a2->word(w))), small.poly(x, w));
}

TEST(HybridRestriction, ZeroPatterns) {
  for (const char* t : {"A3", "I2(6)"}) {
    auto sys = group(t);
    KLCache cache(sys);
    const auto r = verify::check_vanishing_and_support(cache);
    EXPECT_TRUE(r.passed) << t << ": " << r.detail;
  }
}

TEST(HybridRestriction, PositivityA3) {
  auto sys = group("A3");
  KLCache cache(sys);
  EXPECT_TRUE(verify::check_restriction_positivity(cache).passed);
}

TEST(HybridTransition, IdentityAndKL) {
  auto sys = group("A3");
  KLCache cache(sys);
  for (std::uint32_t m = 0; m < 8; ++m)
    EXPECT_EQ(transition_matrix(cache, GeneratorSet(m), GeneratorSet(m)).entries, identity_matrix(*sys));
  EXPECT_EQ(transition_matrix(cache, GeneratorSet{}, sys->all_generators()).entries, kl_matrix(cache));
}

TEST(HybridTransition, ColumnExample) {
  for (const char* t : {"A2", "A3"}) {
    auto sys = group(t);
    KLCache cache(sys);
    const GeneratorSet I{1}, J{1, 2};
    const TransitionMatrix tm = transition_matrix(cache, I, J);
    for (Element u : sys->min_coset_reps(J, Side::Left)) {
      const Element w = sys->multiply(u, sys->parse_word("1,2"));
      PolyMatrix::Column expected{{w, LaurentPoly(1)},
                                  {sys->multiply(u, sys->generator(2)), q},
                                  {sys->multiply(u, sys->generator(1)), q}};
      EXPECT_EQ(tm.entries.column(w), expected) << t;
    }
  }
}

TEST(HybridTransition, RejectsNonNested) {
  auto sys = group("A2");
  KLCache cache(sys);
  EXPECT_THROW(transition_matrix(cache, GeneratorSet{1}, GeneratorSet{2}), domain_error);
}

TEST(HybridTransition, BlocksAndPositivity) {
  for (const char* t : {"A3", "I2(6)"}) {
    auto sys = group(t);
    KLCache cache(sys);
    EXPECT_TRUE(verify::check_transition_block_structure(cache).passed) << t;
    EXPECT_TRUE(verify::check_transition_positivity(cache).passed) << t;
  }
}

TEST(HybridTransition, TranslationByCosetRep) {
  for (const char* t : {"A3", "I2(6)"}) {
    auto sys = group(t);
    KLCache cache(sys);
    const auto r = verify::check_tu_tcz(cache);
    EXPECT_TRUE(r.passed) << t << ": " << r.detail;
  }
}

TEST(HybridChain, Parse) {
  EXPECT_EQ(parse_chain("∅<1<1,2", 2), (std::vector<GeneratorSet>{GeneratorSet{}, GeneratorSet{1}, GeneratorSet{1, 2}}));
  EXPECT_EQ(parse_chain("<2<1,2", 2), (std::vector<GeneratorSet>{GeneratorSet{}, GeneratorSet{2}, GeneratorSet{1, 2}}));
  EXPECT_THROW(parse_chain("∅<1<x", 2), parse_error);
  EXPECT_THROW(parse_chain("∅<3", 2), parse_error);
}

TEST(HybridChain, Factorization) {
  auto sys = group("A2");
  KLCache cache(sys);
  const auto single = factorize_chain(cache, parse_chain("∅<1,2", 2));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].entries, kl_matrix(cache));

  const auto two = factorize_chain(cache, parse_chain("∅<1<1,2", 2));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].entries * two[1].entries, kl_matrix(cache));
  // the opposite product order is not the KL matrix
  EXPECT_FALSE(two[1].entries * two[0].entries == kl_matrix(cache));

  for (const char* t : {"A3", "B3", "I2(5)"}) {
    auto g = group(t);
    KLCache c(g);
    const auto factors = factorize_chain(c, default_chain(g->rank()));
    EXPECT_EQ(factors.size(), static_cast<std::size_t>(g->rank()));
    EXPECT_EQ(chain_product(*g, factors), kl_matrix(c)) << t;
  }
  // a non-default chain
  auto a3 = group("A3");
  KLCache c3(a3);
  EXPECT_EQ(chain_product(*a3, factorize_chain(c3, parse_chain("∅<2<1,2,3", 3))), kl_matrix(c3));
}

TEST(HybridChain, RejectsMalformed) {
  auto sys = group("A2");
  KLCache cache(sys);
  EXPECT_THROW(factorize_chain(cache, parse_chain("1<1,2", 2)), domain_error);
  EXPECT_THROW(factorize_chain(cache, parse_chain("∅<1", 2)), domain_error);
  EXPECT_THROW(factorize_chain(cache, parse_chain("∅<1<1<1,2", 2)), domain_error);
  EXPECT_THROW(factorize_chain(cache, parse_chain("∅<1<2", 2)), domain_error);
}

TEST(HybridParabolicKL, Diagonal) {
  auto sys = group("B3");
  KLCache cache(sys);
  for (std::uint32_t m = 0; m < 8; ++m) {
    const PolyMatrix p = parabolic_kl(cache, GeneratorSet(m));
    for (Element u : p.order()) EXPECT_EQ(p.at(u, u), LaurentPoly(1));
  }
}

TEST(HybridParabolicKL, TypeAMaximalParabolic) {
  for (const char* t : {"A2", "A3", "A4"}) {
    auto sys = group(t);
    KLCache cache(sys);
    const auto r = verify::check_typeA_parabolic_formula(cache);
    EXPECT_TRUE(r.passed) << t << ": " << r.detail;
  }
}

TEST(HybridGH, SampledPositivity) {
  for (const char* t : {"A3", "B3"}) {
    auto sys = group(t);
    KLCache cache(sys);
    const auto r = verify::check_gh_positivity(cache, 60, 31);
    EXPECT_TRUE(r.passed) << t << ": " << r.detail;
  }
}

}  // namespace
