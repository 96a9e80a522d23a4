#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "coxfix/catalog.hpp"
#include "coxfix/coxeter_system.hpp"
#include "coxfix/cyclotomic.hpp"
#include "oracles.hpp"

using namespace coxfix;

namespace {

Word w1(std::initializer_list<int> one_based) {
  Word w;
  for (int s : one_based) w.push_back(s - 1);
  return w;
}

}  // namespace

TEST(Cyclotomic, SmallPolynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<std::int64_t>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<std::int64_t>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<std::int64_t>{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(10), (std::vector<std::int64_t>{1, -1, 1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
}

TEST(Cyclotomic, TwoCosEvaluates) {
  CyclotomicRing r(5);
  for (int k = 0; k < 10; ++k)
    EXPECT_NEAR(static_cast<double>(r.evaluate(r.two_cos(k))), 2 * std::cos(k * M_PI / 5), 1e-12);
}

TEST(MatrixFormat, ParsesA2) {
  std::istringstream in("# A2\nrank 2\n1 3\n3 1\n");
  const auto m = parse_matrix_text(in);
  EXPECT_EQ(m.rank(), 2);
  EXPECT_EQ(m(0, 1), 3);
}

TEST(MatrixFormat, InfinityEntry) {
  std::istringstream in("rank 2\n1 inf\ninf 1\n");
  EXPECT_EQ(parse_matrix_text(in)(0, 1), kInfinity);
}

TEST(MatrixFormat, BadDiagonalReportsLine) {
  std::istringstream in("rank 2\n2 3\n3 1\n");
  try {
    (void)parse_matrix_text(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(MatrixFormat, AsymmetryAndBadTokens) {
  std::istringstream asym("rank 2\n1 3\n4 1\n");
  EXPECT_THROW((void)parse_matrix_text(asym), ParseError);
  std::istringstream tok("rank 2\n1 x\nx 1\n");
  EXPECT_THROW((void)parse_matrix_text(tok), ParseError);
  std::istringstream one("rank 2\n1 1\n1 1\n");
  EXPECT_THROW((void)parse_matrix_text(one), ParseError);
}

TEST(MatrixFormat, RoundTrip) {
  const auto m = catalog("affA2");
  std::istringstream in(m.to_text());
  EXPECT_EQ(parse_matrix_text(in), m);
}

TEST(Catalog, Examples) {
  const auto b3 = catalog("B3");
  EXPECT_EQ(b3(0, 1), 4);
  EXPECT_EQ(b3(1, 2), 3);
  EXPECT_EQ(b3(0, 2), 2);
  EXPECT_EQ(catalog("I2(7)")(0, 1), 7);
  const auto a = catalog("affA2");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) EXPECT_EQ(a(i, j), 3);
  EXPECT_EQ(catalog("I2(inf)")(0, 1), kInfinity);
  EXPECT_EQ(catalog("affA1")(0, 1), kInfinity);
  EXPECT_THROW((void)catalog("Q7"), InputError);
  EXPECT_THROW((void)catalog("E9"), InputError);
}

TEST(Catalog, GroupOrders) {
  const std::vector<std::pair<std::string, std::size_t>> cases = {
      {"A1", 2},   {"A2", 6},   {"A3", 24},    {"A4", 120},  {"B2", 8},  {"B3", 48},    {"B4", 384},
      {"D4", 192}, {"D5", 1920}, {"F4", 1152}, {"G2", 12},   {"H3", 120}, {"I2(7)", 14}, {"E6", 51840}};
  for (const auto& [name, order] : cases) {
    CoxeterSystem w(catalog(name));
    EXPECT_EQ(w.enumerate_all().size(), order) << name;
  }
}

TEST(Catalog, ExponentsMatchDegrees) {
  // The product of degrees is the group order.
  for (const std::string name : {"A3", "B3", "D4", "F4", "H3", "I2(5)"}) {
    const auto ex = *standard_exponents(name);
    std::size_t prod = 1;
    for (int e : ex) prod *= static_cast<std::size_t>(e + 1);
    CoxeterSystem w(catalog(name));
    EXPECT_EQ(prod, w.enumerate_all().size()) << name;
  }
}

TEST(Words, FormatAndParse) {
  EXPECT_EQ(format_word({}), "e");
  EXPECT_EQ(format_word(w1({1, 2, 1})), "1-2-1");
  EXPECT_EQ(parse_word("1-2-1"), w1({1, 2, 1}));
  EXPECT_EQ(parse_word("e"), Word{});
  EXPECT_THROW((void)parse_word("1-x"), InputError);
}

TEST(Canonicalize, Examples) {
  CoxeterSystem a2(catalog("A2"));
  EXPECT_EQ(a2.word(a2.canonicalize(w1({1, 2, 1}))), w1({1, 2, 1}));
  EXPECT_EQ(a2.word(a2.canonicalize(w1({2, 1, 2}))), w1({1, 2, 1}));
  EXPECT_EQ(a2.canonicalize(w1({1, 1})), CoxeterSystem::identity());
  EXPECT_THROW((void)a2.canonicalize(w1({3})), InputError);
  const auto x = a2.canonicalize(w1({2, 1, 2}));
  EXPECT_EQ(a2.canonicalize(a2.word(x)), x);
}

TEST(Canonicalize, AgreesWithTitsOracle) {
  for (const std::string name : {"A3", "B3", "H3", "I2(5)", "affA2", "I2(inf)"}) {
    const auto m = catalog(name);
    CoxeterSystem w(m);
    // Every word of length <= 6 over the generators.
    std::vector<Word> words{{}};
    for (int len = 1; len <= 6; ++len) {
      std::vector<Word> next;
      for (const auto& p : words)
        if (static_cast<int>(p.size()) == len - 1)
          for (int s = 0; s < m.rank(); ++s) {
            Word q = p;
            q.push_back(s);
            next.push_back(q);
          }
      words.insert(words.end(), next.begin(), next.end());
    }
    for (const auto& word : words) ASSERT_EQ(w.word(w.canonicalize(word)), oracle::tits_canonical(m, word)) << name;
  }
}

TEST(IsReduced, Examples) {
  CoxeterSystem a2(catalog("A2"));
  EXPECT_TRUE(a2.is_reduced(w1({1, 2, 1})));
  CoxeterSystem a1a1(CoxeterMatrix(2));
  EXPECT_FALSE(a1a1.is_reduced(w1({1, 2, 1})));
  CoxeterSystem a3(catalog("A3"));
  EXPECT_TRUE(a3.is_reduced(w1({1, 2, 3, 1})));
}

TEST(Multiply, Examples) {
  CoxeterSystem a2(catalog("A2"));
  const auto s1 = a2.generator(0);
  EXPECT_EQ(a2.multiply(s1, s1), CoxeterSystem::identity());
  EXPECT_EQ(a2.multiply(a2.canonicalize(w1({1, 2})), a2.canonicalize(w1({2, 1}))), CoxeterSystem::identity());
  EXPECT_EQ(a2.word(a2.multiply(s1, a2.canonicalize(w1({2, 1})))), w1({1, 2, 1}));
}

TEST(Invert, Examples) {
  CoxeterSystem a2(catalog("A2"));
  EXPECT_EQ(a2.invert(CoxeterSystem::identity()), CoxeterSystem::identity());
  EXPECT_EQ(a2.word(a2.invert(a2.canonicalize(w1({1, 2})))), w1({2, 1}));
  const auto w0 = a2.canonicalize(w1({1, 2, 1}));
  EXPECT_EQ(a2.invert(w0), w0);
}

TEST(TypeA, PermutationModelAgrees) {
  for (int n : {2, 3, 4}) {
    CoxeterSystem w(catalog("A" + std::to_string(n)));
    const auto all = w.enumerate_all();
    std::set<std::vector<int>> perms;
    for (Element x : all) {
      const auto p = oracle::perm_of_word(n, w.word(x));
      perms.insert(p);
      EXPECT_EQ(w.length(x), oracle::inversions(p));
      for (int s = 0; s < n; ++s) {
        const auto q = oracle::perm_of_word(n, w.word(w.right_multiply(x, s)));
        auto expect = p;
        std::swap(expect[static_cast<std::size_t>(s)], expect[static_cast<std::size_t>(s + 1)]);
        EXPECT_EQ(q, expect);
        const bool right_descent = w.descents(x, Side::right) >> s & 1U;
        EXPECT_EQ(right_descent, oracle::inversions(expect) < oracle::inversions(p));
      }
    }
    std::size_t fact = 1;
    for (int k = 2; k <= n + 1; ++k) fact *= static_cast<std::size_t>(k);
    EXPECT_EQ(perms.size(), fact);
    EXPECT_EQ(all.size(), fact);
  }
}

TEST(ReducedExpressions, Examples) {
  CoxeterSystem a2(catalog("A2"));
  EXPECT_EQ(a2.reduced_expressions(CoxeterSystem::identity()), std::vector<Word>{Word{}});
  EXPECT_EQ(a2.reduced_expressions(a2.canonicalize(w1({1, 2, 1}))), (std::vector<Word>{w1({1, 2, 1}), w1({2, 1, 2})}));
  CoxeterSystem a3(catalog("A3"));
  EXPECT_EQ(a3.reduced_expressions(a3.longest_element()).size(), 16U);
}

TEST(ReducedExpressions, CountMatchesIndependentDfs) {
  // Reduced words of x: those with last letter a right descent s, followed
  // by reduced words of xs. Counted recursively.
  CoxeterSystem w(catalog("B3"));
  std::map<std::uint32_t, std::size_t> memo;
  std::function<std::size_t(Element)> count = [&](Element x) -> std::size_t {
    if (w.length(x) == 0) return 1;
    if (auto it = memo.find(x.id); it != memo.end()) return it->second;
    std::size_t c = 0;
    for (int s : w.descent_list(x, Side::right)) c += count(w.right_multiply(x, s));
    return memo[x.id] = c;
  };
  for (Element x : w.enumerate_all()) {
    const auto words = w.reduced_expressions(x);
    ASSERT_EQ(words.size(), count(x));
    std::set<int> support(w.word(x).begin(), w.word(x).end());
    for (const auto& r : words) {
      EXPECT_EQ(w.canonicalize(r), x);
      EXPECT_EQ(std::set<int>(r.begin(), r.end()), support);
    }
  }
}

TEST(Ball, Examples) {
  CoxeterSystem a2(catalog("A2"));
  EXPECT_EQ(a2.enumerate_ball(0), std::vector<Element>{CoxeterSystem::identity()});
  EXPECT_EQ(a2.enumerate_ball(3).size(), 6U);
  CoxeterSystem aff(catalog("affA2"));
  EXPECT_EQ(aff.enumerate_ball(2).size(), 10U);
  // Growth series of affine A2: 1, 3, 6, 9, 12, ...
  const auto ball = aff.enumerate_ball(8);
  std::vector<int> layer(9, 0);
  for (Element x : ball) ++layer[static_cast<std::size_t>(aff.length(x))];
  EXPECT_EQ(layer, (std::vector<int>{1, 3, 6, 9, 12, 15, 18, 21, 24}));
}

TEST(Ball, ResourceCap) {
  SystemLimits lim;
  lim.ball_cap = 50;
  CoxeterSystem aff(catalog("affA2"), lim);
  EXPECT_THROW((void)aff.enumerate_ball(10), ResourceError);
}

TEST(LongestElement, Examples) {
  CoxeterSystem a2(catalog("A2"));
  EXPECT_EQ(a2.word(a2.longest_element(std::vector<int>{0})), w1({1}));
  EXPECT_EQ(a2.word(a2.longest_element()), w1({1, 2, 1}));
  CoxeterSystem inf(catalog("I2(inf)"));
  EXPECT_THROW((void)inf.longest_element(), InfiniteParabolicError);
  EXPECT_FALSE(inf.is_finite());
  CoxeterSystem aff(catalog("affA2"));
  EXPECT_TRUE(aff.is_parabolic_finite(std::vector<int>{0, 1}));
  EXPECT_FALSE(aff.is_finite());
}

TEST(LongestElement, Properties) {
  for (const std::string name : {"A4", "B3", "D4", "H3", "F4"}) {
    CoxeterSystem w(catalog(name));
    const auto w0 = w.longest_element();
    EXPECT_EQ(w.invert(w0), w0);
    EXPECT_EQ(w.descents(w0, Side::right), w.full_mask());
    int maxlen = 0;
    for (Element x : w.enumerate_all()) maxlen = std::max(maxlen, w.length(x));
    EXPECT_EQ(w.length(w0), maxlen) << name;
  }
}

TEST(Descents, Examples) {
  CoxeterSystem a2(catalog("A2"));
  EXPECT_EQ(a2.descents(CoxeterSystem::identity(), Side::left), 0U);
  const auto w0 = a2.longest_element();
  EXPECT_EQ(a2.descents(w0, Side::left), 3U);
  EXPECT_EQ(a2.descents(w0, Side::right), 3U);
  const auto x = a2.canonicalize(w1({1, 2}));
  EXPECT_EQ(a2.descent_list(x, Side::right), std::vector<int>{1});
  EXPECT_EQ(a2.descent_list(x, Side::left), std::vector<int>{0});
}

TEST(AbsoluteLength, Examples) {
  CoxeterSystem a3(catalog("A3"));
  const auto all = a3.enumerate_all();
  EXPECT_EQ(a3.absolute_length(CoxeterSystem::identity(), all), 0);
  for (Element t : a3.reflections(6)) EXPECT_EQ(a3.absolute_length(t, all), 1);
  EXPECT_EQ(a3.absolute_length(a3.canonicalize(w1({1, 3})), all), 2);
  EXPECT_EQ(a3.reflections(6).size(), 6U);
}

TEST(AbsoluteLength, TypeAOracle) {
  CoxeterSystem a4(catalog("A4"));
  const auto all = a4.enumerate_all();
  for (Element x : all) {
    const int l = a4.absolute_length(x, all);
    EXPECT_EQ(l, oracle::absolute_length_perm(oracle::perm_of_word(4, a4.word(x))));
    EXPECT_LE(l, a4.length(x));
    EXPECT_EQ((a4.length(x) - l) % 2, 0);
  }
}

TEST(AbsoluteLength, BallTooSmall) {
  CoxeterSystem aff(catalog("affA2"));
  const auto tiny = aff.enumerate_ball(1);
  const auto x = aff.canonicalize(w1({1, 2, 3, 1, 2, 3}));
  EXPECT_THROW((void)aff.absolute_length(x, tiny), ResourceError);
}

TEST(Reflections, CountsAndRecognition) {
  for (const auto& [name, count] : std::vector<std::pair<std::string, std::size_t>>{
           {"A3", 6}, {"B3", 9}, {"D4", 12}, {"H3", 15}, {"I2(7)", 7}}) {
    CoxeterSystem w(catalog(name));
    const auto all = w.enumerate_all();
    const auto t = w.reflections(w.length(w.longest_element()));
    EXPECT_EQ(t.size(), count) << name;
    std::size_t recognised = 0;
    for (Element x : all) recognised += w.is_reflection(x) ? 1 : 0;
    EXPECT_EQ(recognised, count) << name;
  }
}

TEST(System, CachesAgreeWithFreshSystem) {
  CoxeterSystem a(catalog("H3")), b(catalog("H3"));
  const auto all = a.enumerate_all();
  for (Element x : all) {
    const Word& wx = a.word(x);
    // Built in a fresh system in reverse order of letters.
    Word rev(wx.rbegin(), wx.rend());
    const Element y = b.invert(b.canonicalize(rev));
    EXPECT_EQ(b.word(y), wx);
  }
}
