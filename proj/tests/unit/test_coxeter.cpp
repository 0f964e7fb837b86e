#include "ac/coxeter.hpp"

#include <doctest.h>

#include <set>

using namespace ac;

namespace {

// Subwords of a reduced word: the Bruhat ideal below it.
std::set<std::vector<std::int64_t>> subword_ideal(const CoxeterGroup& G, const std::vector<int>& w) {
  std::set<std::vector<std::int64_t>> out;
  for (unsigned mask = 0; mask < (1u << w.size()); ++mask) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (mask >> i & 1) sub.push_back(w[i]);
    out.insert(G.from_word(sub).shi);
  }
  return out;
}

int brute_separating(const CoxeterGroup& G, const GroupElement& x) {
  const auto& S = G.sys();
  QVec p = S.a0_center, q = x.center(S);
  int count = 0;
  for (const auto& a : S.R.positive)
    for (int n = -20; n <= 20; ++n) {
      Q u = dot(p, a) - Q(n), v = dot(q, a) - Q(n);
      if ((u < 0) != (v < 0)) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("ball layers match the Poincare series") {
  for (std::string label : {"C2", "C3", "B3", "G2", "F4", "A2", "A3", "C1"}) {
    CAPTURE(label);
    CoxeterGroup G(make_affine(label));
    int N = label == "F4" ? 6 : 9;
    Ball X(G, N);
    auto counts = poincare_counts(G.sys().coxeter, N);
    for (int k = 0; k <= N; ++k) CHECK(X.layer_begin(k + 1) - X.layer_begin(k) == counts[k]);
  }
}

TEST_CASE("Poincare series of the infinite dihedral group") {
  auto c = poincare_counts({{1, 0}, {0, 1}}, 5);
  CHECK(c == std::vector<long long>{1, 2, 2, 2, 2, 2});
}

TEST_CASE("length equals the number of separating hyperplanes") {
  for (std::string label : {"C2", "G2", "B3"}) {
    CoxeterGroup G(make_affine(label));
    Ball X(G, 6);
    for (int i = 0; i < X.size(); ++i) {
      CHECK(G.length(X[i]) == X.length(i));
      CHECK(brute_separating(G, X[i]) == X.length(i));
      CHECK(static_cast<int>(G.separating_from_base(X[i]).size()) == X.length(i));
    }
  }
}

TEST_CASE("separating hyperplanes in C2") {
  CoxeterGroup G(make_affine("C2"));
  auto e = G.identity();
  CHECK(G.separating(e, e).empty());
  for (int s = 0; s < 3; ++s) {
    auto H = G.separating_from_base(G.generator(s));
    REQUIRE(H.size() == 1);
    CHECK(H[0] == G.sys().walls[s]);
  }
  auto x = *G.parse("tsts");
  CHECK(G.separating_from_base(x).size() == 4);
  CHECK(brute_separating(G, x) == 4);
}

TEST_CASE("descents agree with lengths") {
  CoxeterGroup G(make_affine("C3"));
  Ball X(G, 7);
  for (int i = 0; i < X.size(); ++i)
    for (int s = 0; s < G.num_gens(); ++s) {
      auto sx = G.apply_generator(s, X[i]);
      auto xs = G.times_generator(X[i], s);
      CHECK(G.is_left_descent(s, X[i]) == (G.length(sx) < X.length(i)));
      CHECK(G.is_right_descent(X[i], s) == (G.length(xs) < X.length(i)));
    }
}

TEST_CASE("products and inverses") {
  CoxeterGroup G(make_affine("G2"));
  Ball X(G, 6);
  for (int i = 0; i < X.size(); i += 3) {
    int inv = X.inverse(i);
    REQUIRE(inv >= 0);
    CHECK(G.multiply(X[i], X[inv]) == G.identity());
    auto w = X.word(i);
    std::reverse(w.begin(), w.end());
    CHECK(G.from_word(w) == X[inv]);
    for (int j = 0; j < X.size(); j += 7) {
      int k = X.mul(i, j);
      if (k >= 0) CHECK(X[k] == G.multiply(X[i], X[j]));
    }
  }
}

TEST_CASE("Bruhat order agrees with subwords") {
  CoxeterGroup G(make_affine("C2"));
  Ball X(G, 6);
  for (int w = 0; w < X.size(); ++w) {
    auto ideal = subword_ideal(G, X.word(w));
    for (int y = 0; y < X.size(); ++y) {
      bool expect = ideal.count(X[y].shi) > 0;
      CHECK(X.bruhat_leq(y, w) == expect);
      if (y % 5 == 0) CHECK(G.bruhat_leq(X[y], X[w]) == expect);
    }
  }
}

TEST_CASE("word parsing") {
  CoxeterGroup G(make_affine("C2"));
  auto a = G.parse_word("tst's");
  REQUIRE(a);
  CHECK(*a == std::vector<int>{0, 1, 2, 1});
  CHECK(*G.parse_word("t.s.t'.s") == *a);
  CHECK(*G.parse_word("tst′s") == *a);
  CHECK(!G.parse_word("tsx"));
  CHECK(G.str(G.identity()) == "e");
}

TEST_CASE("weight of an element") {
  CoxeterGroup G(make_affine("C2"));
  auto L = WeightFunction::generic(OrderedGroup::lex(3, {0, 1, 2}));
  CHECK(G.weight_of(L, G.identity()) == L.group->zero());
  CHECK(G.weight_of(L, *G.parse("tsts")) == Gamma{2, 2, 0});
  auto Z = WeightFunction::integral({0, 0, 0});
  Ball X(G, 5);
  for (int i = 0; i < X.size(); ++i) CHECK(G.weight_of(Z, X[i]) == Gamma{0});
}

TEST_CASE("zero-weight elements are transparent") {
  CoxeterGroup G(make_affine("C2"));
  auto L = WeightFunction::integral({2, 0, 1});
  Ball X(G, 5);
  std::vector<int> zero;
  for (int i = 0; i < X.size(); ++i)
    if (G.weight_of(L, X[i]) == Gamma{0}) zero.push_back(i);
  CHECK(zero.size() == 2);
  for (int x : zero)
    for (int y = 0; y < X.size(); ++y) {
      auto Ly = G.weight_of(L, X[y]);
      CHECK(G.weight_of(L, G.multiply(X[x], X[y])) == Ly);
      CHECK(G.weight_of(L, G.multiply(X[y], X[x])) == Ly);
    }
}

TEST_CASE("additivity") {
  CoxeterGroup G(make_affine("C2"));
  auto t = G.generator(0), s = G.generator(1);
  CHECK(is_length_additive(G, {t, s, t}));
  CHECK(!is_length_additive(G, {t, t}));
  auto L = WeightFunction::integral({1, 0, 1});
  CHECK(is_L_additive(G, {s, s}, L));
  CHECK(!is_L_additive(G, {t, t}, L));
}

TEST_CASE("finite parabolics") {
  CoxeterGroup G(make_affine("C2"));
  auto P = parabolic(G, {0, 1});
  CHECK(P.finite);
  CHECK(P.elements.size() == 8);
  CHECK(G.length(P.longest) == 4);
  CHECK(!parabolic(G, {0, 1, 2}).finite);
  auto x = *G.parse("tstst'");
  auto [v, d] = strip_left(G, x, {0, 1});
  CHECK(G.multiply(v, d) == x);
  CHECK(G.descents_left(d).size() == 1);
  auto [xp, u] = strip_right(G, x, {2});
  CHECK(G.multiply(xp, u) == x);
  CHECK(G.length(u) == 1);
}
