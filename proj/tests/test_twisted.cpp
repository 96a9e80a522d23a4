#include <gtest/gtest.h>

#include "coxfix/catalog.hpp"
#include "coxfix/orders.hpp"
#include "coxfix/twisted.hpp"
#include "oracles.hpp"

using namespace coxfix;

namespace {

Word w1(std::initializer_list<int> one_based) {
  Word w;
  for (int s : one_based) w.push_back(s - 1);
  return w;
}

GraphAutomorphism flip(const CoxeterMatrix& m) {
  std::vector<int> p(static_cast<std::size_t>(m.rank()));
  for (int i = 0; i < m.rank(); ++i) p[static_cast<std::size_t>(i)] = m.rank() - 1 - i;
  return GraphAutomorphism(m, p);
}

// D4 outer swap: nodes 3 and 4 exchanged.
GraphAutomorphism d4_swap(const CoxeterMatrix& m) { return GraphAutomorphism(m, {0, 1, 3, 2}); }

}  // namespace

TEST(GraphAutomorphism, Validation) {
  const auto a3 = catalog("A3");
  EXPECT_NO_THROW(GraphAutomorphism(a3, {2, 1, 0}));
  EXPECT_THROW(GraphAutomorphism(a3, {1, 0, 2}), InputError);  // breaks the bond 2-3
  EXPECT_THROW(GraphAutomorphism(a3, {0, 0, 2}), InputError);
  EXPECT_THROW(GraphAutomorphism(a3, {0, 1}), InputError);
  EXPECT_EQ(parse_perm("3,2,1"), (std::vector<int>{2, 1, 0}));
  EXPECT_THROW((void)parse_perm("3,x,1"), InputError);
  EXPECT_EQ(GraphAutomorphism(a3, {2, 1, 0}).to_string(), "3,2,1");
  EXPECT_EQ(GraphAutomorphism::identity(a3).to_string(), "id");
}

TEST(ApplyAuto, Examples) {
  CoxeterSystem w(catalog("A3"));
  const auto th = flip(w.matrix());
  const auto x = w.canonicalize(w1({1, 2}));
  EXPECT_EQ(apply_auto(w, GraphAutomorphism::identity(w.matrix()), x), x);
  EXPECT_EQ(w.word(apply_auto(w, th, x)), w1({3, 2}));
  EXPECT_EQ(apply_auto(w, th, w.longest_element()), w.longest_element());
}

TEST(ApplyAuto, IsLengthPreservingHomomorphism) {
  CoxeterSystem w(catalog("D4"));
  const auto th = d4_swap(w.matrix());
  const auto all = w.enumerate_all();
  for (std::size_t i = 0; i < all.size(); i += 7)
    for (std::size_t j = 0; j < all.size(); j += 11) {
      const Element x = all[i], y = all[j];
      EXPECT_EQ(apply_auto(w, th, w.multiply(x, y)), w.multiply(apply_auto(w, th, x), apply_auto(w, th, y)));
      EXPECT_EQ(w.length(apply_auto(w, th, x)), w.length(x));
    }
}

TEST(TwistedInvolutions, Examples) {
  CoxeterSystem a2(catalog("A2"));
  const auto id2 = GraphAutomorphism::identity(a2.matrix());
  const auto inv = twisted_involutions(a2, id2, 3);
  EXPECT_EQ(inv.size(), 4U);
  std::vector<Word> words;
  for (Element x : inv) words.push_back(a2.word(x));
  EXPECT_EQ(words, (std::vector<Word>{Word{}, w1({1}), w1({2}), w1({1, 2, 1})}));

  CoxeterSystem a3(catalog("A3"));
  EXPECT_EQ(twisted_involutions(a3, GraphAutomorphism::identity(a3.matrix()), 6).size(), 10U);
  EXPECT_EQ(twisted_involutions(a3, flip(a3.matrix()), 0), std::vector<Element>{CoxeterSystem::identity()});
}

TEST(TwistedInvolutions, TypeAFlipCountsInvolutions) {
  // w in I(flip) iff w w0 is an involution, so |I(flip)| = |I(id)|.
  CoxeterSystem a4(catalog("A4"));
  const auto n_id = twisted_involutions(a4, GraphAutomorphism::identity(a4.matrix()), 10).size();
  const auto n_flip = twisted_involutions(a4, flip(a4.matrix()), 10).size();
  EXPECT_EQ(n_id, 26U);
  EXPECT_EQ(n_flip, n_id);
}

TEST(TwistedIdentities, Examples) {
  CoxeterSystem a3(catalog("A3"));
  EXPECT_EQ(twisted_identities(a3, GraphAutomorphism::identity(a3.matrix()), 6),
            std::vector<Element>{CoxeterSystem::identity()});
  const auto th = flip(a3.matrix());
  const auto iota = twisted_set(a3, th, 6);
  EXPECT_TRUE(iota.is_identity(a3.canonicalize(w1({1, 3}))));
  EXPECT_TRUE(iota.is_identity(CoxeterSystem::identity()));
  EXPECT_TRUE(verify_rotation_lemma(a3, iota, 6).ok);
  for (Element x : iota.identities) EXPECT_TRUE(iota.is_involution(x));
}

TEST(Ltheta, Examples) {
  CoxeterSystem a2(catalog("A2"));
  const auto iota = twisted_set(a2, GraphAutomorphism::identity(a2.matrix()), 3);
  EXPECT_EQ(twisted_absolute_length(a2, CoxeterSystem::identity(), iota), 0);
  EXPECT_EQ(twisted_absolute_length(a2, a2.longest_element(), iota), 1);
  EXPECT_TRUE(verify_welldefined_ltheta(a2, a2.longest_element(), iota));
  EXPECT_TRUE(verify_welldefined_ltheta(a2, CoxeterSystem::identity(), iota));
}

TEST(Ltheta, EqualsAbsoluteLengthForIdentity) {
  CoxeterSystem a3(catalog("A3"));
  const auto iota = twisted_set(a3, GraphAutomorphism::identity(a3.matrix()), 6);
  const auto all = a3.enumerate_all();
  for (Element x : all) {
    EXPECT_EQ(twisted_absolute_length(a3, x, iota), a3.absolute_length(x, all));
    EXPECT_EQ(twisted_absolute_length(a3, x, iota), oracle::absolute_length_perm(oracle::perm_of_word(3, a3.word(x))));
  }
}

TEST(Ltheta, DynamicProgramMatchesSubsetEnumeration) {
  struct Case {
    std::string group;
    std::vector<int> perm;
  };
  for (const auto& c : std::vector<Case>{{"A3", {2, 1, 0}}, {"B3", {0, 1, 2}}, {"D4", {0, 1, 3, 2}}, {"A4", {3, 2, 1, 0}}}) {
    CoxeterSystem w(catalog(c.group));
    const GraphAutomorphism th(w.matrix(), c.perm);
    const auto iota = twisted_set(w, th, 8);
    for (Element x : w.enumerate_ball(8)) {
      const int bf = oracle::ltheta_bruteforce(w, w.word(x), [&](Element y) { return iota.is_identity(y); });
      ASSERT_EQ(twisted_absolute_length(w, x, iota), bf) << c.group << " " << format_word(w.word(x));
    }
  }
}

TEST(Ltheta, ResourceErrorOutsideMaterializedSet) {
  CoxeterSystem aff(catalog("affA2"));
  const auto iota = twisted_set(aff, GraphAutomorphism::identity(aff.matrix()), 3);
  EXPECT_FALSE(iota.exhaustive);
  EXPECT_THROW((void)twisted_absolute_length(aff, aff.canonicalize(w1({1, 2, 3, 1})), iota), ResourceError);
}

TEST(Lemmas, SmallExamples) {
  CoxeterSystem a2(catalog("A2"));
  const auto iota = twisted_set(a2, GraphAutomorphism::identity(a2.matrix()), 3);
  // w0 = s1 s2 theta(s1): the middle s2 has l^id = 1 = l^id(w0).
  EXPECT_EQ(twisted_absolute_length(a2, a2.generator(1), iota), 1);
  const auto r = verify_length_lemma(a2, iota, 3);
  EXPECT_TRUE(r.ok);
  EXPECT_GT(r.checked, 0U);
  EXPECT_TRUE(verify_rotation_lemma(a2, iota, 3).ok);

  CoxeterSystem a3(catalog("A3"));
  const auto fl = twisted_set(a3, flip(a3.matrix()), 6);
  EXPECT_TRUE(verify_halving_lemma(a3, fl, 6).ok);
  EXPECT_TRUE(verify_length_lemma(a3, fl, 6).ok);
  EXPECT_TRUE(verify_welldefined_sweep(a3, fl, 6).ok);

  CoxeterSystem d4(catalog("D4"));
  const auto sw = twisted_set(d4, d4_swap(d4.matrix()), 6);
  EXPECT_TRUE(verify_rotation_lemma(d4, sw, 6).ok);
}

TEST(Lemmas, HalvingFailsWhenItShould) {
  // Identities of the wrong shape are rejected: feed a set in which a
  // non-identity is declared an identity.
  CoxeterSystem a3(catalog("A3"));
  auto fake = twisted_set(a3, flip(a3.matrix()), 6);
  const Element bogus = a3.generator(1);
  fake.identities.push_back(bogus);
  fake.identity_set.insert(bogus);
  EXPECT_FALSE(verify_halving_lemma(a3, fake, 6).ok);
}

TEST(TwistedBruhat, Examples) {
  CoxeterSystem a2(catalog("A2"));
  const auto id = GraphAutomorphism::identity(a2.matrix());
  const auto e = CoxeterSystem::identity();
  EXPECT_EQ(build_twisted_bruhat(a2, id, e, e).size(), 1U);
  const auto d = build_twisted_bruhat(a2, id, e, a2.longest_element());
  EXPECT_EQ(d.size(), 4U);
  EXPECT_EQ(d.poset.cover_count(), 4U);
  EXPECT_THROW((void)build_twisted_bruhat(a2, id, e, a2.canonicalize(w1({1, 2}))), PreconditionError);

  const auto iota = twisted_set(a2, id, 3);
  const auto g = is_graded(d);
  ASSERT_TRUE(g.graded);
  EXPECT_EQ(g.rank[d.top], 2);
  EXPECT_TRUE(verify_rank_theorem(a2, d, iota).ok);
  EXPECT_TRUE(verify_gorenstein_theorem({d}).ok);
}

TEST(TwistedBruhat, InvolutionsOfS4) {
  CoxeterSystem a3(catalog("A3"));
  const auto id = GraphAutomorphism::identity(a3.matrix());
  const auto iota = twisted_set(a3, id, 6);
  const auto& inv = iota.involutions;
  std::vector<Interval> ivs;
  for (Element u : inv)
    for (Element v : inv)
      if (bruhat_leq(a3, u, v)) ivs.push_back(build_twisted_bruhat(a3, inv, u, v));
  for (const auto& iv : ivs) {
    ASSERT_TRUE(is_graded(iv).graded);
    ASSERT_TRUE(is_eulerian(iv));
    ASSERT_TRUE(verify_rank_theorem(a3, iv, iota).ok);
  }
  EXPECT_TRUE(verify_gorenstein_theorem(ivs).ok);
  const auto top = build_twisted_bruhat(a3, inv, CoxeterSystem::identity(), a3.longest_element());
  EXPECT_EQ(is_graded(top).rank[top.top], 4);
}

TEST(TwistedBruhat, RankTheoremDetectsWrongLength) {
  // Declaring every element a twisted identity makes l^theta vanish, and the
  // formula then disagrees with the rank on the graded interval [e, w0].
  CoxeterSystem a2(catalog("A2"));
  const auto all = a2.enumerate_all();
  const auto iv = build_interval(a2, OrderKind::bruhat, all, CoxeterSystem::identity(), a2.longest_element());
  TwistedSet everything;
  everything.radius = 3;
  everything.exhaustive = true;
  for (Element x : all) everything.identity_set.insert(x);
  EXPECT_FALSE(verify_rank_theorem(a2, iv, everything).ok);
}

TEST(TwistedBruhat, FixedPointsOfInverseTheta) {
  // Br(I(theta)) intervals are the fixed subposets of x -> theta(x)^{-1}.
  CoxeterSystem w(catalog("A3"));
  const auto th = flip(w.matrix());
  const auto iota = twisted_set(w, th, 6);
  const auto all = w.enumerate_all();
  for (Element top : iota.involutions) {
    const auto amb = build_interval(w, OrderKind::bruhat, all, CoxeterSystem::identity(), top);
    const auto fixed = induced_subposet(amb.poset, [&](Poset::Key k) {
      const Element x{k};
      return w.invert(apply_auto(w, th, x)) == x;
    });
    const auto tw = build_twisted_bruhat(w, iota.involutions, CoxeterSystem::identity(), top);
    auto a = fixed.keys(), b = tw.poset.keys();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
    EXPECT_EQ(fixed.cover_count(), tw.poset.cover_count());
  }
}
