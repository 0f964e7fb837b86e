#include "ac/ordered_weights.hpp"

#include <doctest.h>

#include <random>

using namespace ac;

TEST_CASE("lex order on Z^2") {
  auto G = OrderedGroup::lex(2, {0, 1});
  CHECK(G->compare(Gamma{1, -5}, Gamma{0, 0}) > 0);
  CHECK(G->compare(Gamma{0, 0}, Gamma{0, 0}) == 0);
  CHECK(G->compare(Gamma{0, -1}, Gamma{0, 0}) < 0);
}

TEST_CASE("three-form order decides on the third form") {
  OrderedGroup G(3, {{1, 0, 0}, {0, 1, 1}, {0, -1, 1}});
  CHECK(G.kernel_basis().empty());
  CHECK(G.apply_form(1, Gamma{0, -1, 1}) == 0);
  CHECK(G.compare(Gamma{0, -1, 1}, G.zero()) > 0);
}

TEST_CASE("quotient order identifies the kernel") {
  OrderedGroup G(3, {{1, 0, 0}, {0, 1, 1}});
  REQUIRE(G.kernel_basis().size() == 1);
  CHECK(G.canonical(Gamma{0, -1, 1}) == G.zero());
  CHECK(G.canonical(Gamma{2, 5, 0}) == G.canonical(Gamma{2, 0, 5}));
  CHECK(G.compare(Gamma{0, -3, 3}, G.zero()) == 0);
}

TEST_CASE("order is total and translation invariant") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-4, 4);
  OrderedGroup G(3, {{1, 0, 1}, {0, 1, 0}});
  for (int it = 0; it < 500; ++it) {
    Gamma a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)}, c{d(rng), d(rng), d(rng)};
    a = G.canonical(a);
    b = G.canonical(b);
    int ab = G.compare(a, b);
    CHECK(ab == -G.compare(b, a));
    CHECK((ab == 0) == (a == b));
    CHECK(G.compare(G.canonical(a + c), G.canonical(b + c)) == ab);
  }
}

TEST_CASE("projections") {
  auto G = OrderedGroup::lex(2, {0, 1}, {true, false});
  CHECK(G->project_plus(Gamma{2, 3}) == Gamma{2, 0});
  CHECK(G->project_circ(Gamma{2, 3}) == Gamma{0, 3});
  auto C = OrderedGroup::lex(3, {0, 1, 2}, {true, false, true});
  CHECK(C->project_plus(Gamma{1, 4, -2}) == Gamma{1, 0, -2});
  CHECK(C->project_plus(C->zero()) == C->zero());
}

TEST_CASE("degree and negativity") {
  auto Z = OrderedGroup::integers();
  auto a = Laurent::monomial(Z.get(), Gamma{3}) - Laurent::monomial(Z.get(), Gamma{-3});
  CHECK(*a.deg() == Gamma{3});
  CHECK(!Laurent(Z.get()).deg());
  CHECK(Laurent::monomial(Z.get(), Gamma{-2}).is_strictly_negative());
  CHECK(!Laurent::constant(Z.get(), 1).is_strictly_negative());
  auto L3 = OrderedGroup::lex(3, {0, 1, 2}, {true, false, false});
  auto m = Laurent::monomial(L3.get(), Gamma{-1, 7, 0});
  CHECK(m.is_strictly_negative());
  CHECK(phi1_shortcut(m));
}

TEST_CASE("degree is additive and bar is an involution") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-3, 3);
  auto G = OrderedGroup::lex(2, {1, 0});
  auto rnd = [&] {
    Laurent a(G.get());
    for (int k = 0; k < 4; ++k) a += Laurent::monomial(G.get(), Gamma{d(rng), d(rng)}, d(rng));
    return a;
  };
  for (int it = 0; it < 200; ++it) {
    Laurent a = rnd(), b = rnd();
    CHECK(a.bar().bar() == a);
    CHECK((a * b).bar() == a.bar() * b.bar());
    if (!a.is_zero() && !b.is_zero()) CHECK(*(a * b).deg() == G->canonical(*a.deg() + *b.deg()));
  }
}

TEST_CASE("specialization is a ring homomorphism") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  auto G = OrderedGroup::lex(2, {0, 1});
  auto th = Specialization::to_weights(G, {1, 1});
  CHECK(th.well_defined());
  auto diff = Laurent::monomial(G.get(), Gamma{1, 0}) - Laurent::monomial(G.get(), Gamma{0, 1});
  CHECK(th(diff).is_zero());
  for (int it = 0; it < 100; ++it) {
    Laurent a(G.get()), b(G.get());
    for (int k = 0; k < 3; ++k) {
      a += Laurent::monomial(G.get(), Gamma{d(rng), d(rng)}, d(rng));
      b += Laurent::monomial(G.get(), Gamma{d(rng), d(rng)}, d(rng));
    }
    CHECK(th(a * b) == th(a) * th(b));
  }
}

TEST_CASE("specialization must kill the kernel") {
  auto G = std::make_shared<OrderedGroup>(3, std::vector<OrderedGroup::Row>{{1, 0, 0}, {0, 1, 1}});
  CHECK(Specialization::to_weights(G, {5, 1, 1}).well_defined());
  CHECK(!Specialization::to_weights(G, {5, 2, 1}).well_defined());
}

TEST_CASE("admissibility") {
  auto ok = OrderedGroup::lex(2, {1, 0}, {false, true});
  CHECK(ok->admissible());
  auto bad = OrderedGroup::lex(2, {0, 1}, {false, true});
  std::string why;
  CHECK(!bad->admissible(&why));
  CHECK(!why.empty());
}

TEST_CASE("json round trip") {
  OrderedGroup G(3, {{1, 0, 0}, {0, 1, 1}}, {true, false, true});
  nlohmann::json j = G;
  auto H = group_from_json(j);
  CHECK(H->same_as(G));
  auto a = Laurent::monomial(H.get(), Gamma{1, 2, 0}, 3) + Laurent::constant(H.get(), -1);
  nlohmann::json ja = a;
  CHECK(laurent_from_json(ja, H.get()) == a);
}
