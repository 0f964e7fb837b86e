#include "ac/param_space.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ac;

namespace {

std::vector<Q> qv(std::vector<std::int64_t> v) { return {v.begin(), v.end()}; }

bool contains(const std::vector<RationalHyperplane>& arr, std::vector<std::int64_t> n) {
  return std::find(arr.begin(), arr.end(), RationalHyperplane{std::move(n)}) != arr.end();
}

std::vector<std::vector<int>> sorted_classes(const CellPartition& cp) {
  auto c = cp.classes;
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

TEST_CASE("hyperplane normalization") {
  auto h = make_hyperplane({Q(-2), Q(4), Q(0)});
  CHECK(h.normal == std::vector<std::int64_t>{1, -2, 0});
  auto g = make_hyperplane({Q(0), Q(1, 3), Q(-1, 2)});
  CHECK(g.normal == std::vector<std::int64_t>{0, 2, -3});
  CHECK_THROWS(make_hyperplane({Q(0), Q(0)}));
}

TEST_CASE("B/F/G arrangement") {
  CHECK(arrangement_BFG(Q(1), Q(1)).size() == 4);
  CHECK(arrangement_BFG(Q(2), Q(3)).size() == 6);
  auto arr = arrangement_BFG(Q(3), Q(3));
  auto F = facet_of(qv({5, 1}), arr);
  CHECK(std::count(F.begin(), F.end(), 0) == 0);
  // (3, 1) sits on s - 3t = 0.
  auto E = facet_of(qv({3, 1}), arr);
  CHECK(std::count(E.begin(), E.end(), 0) == 1);
  CHECK(in_closure(E, F));
  CHECK(!in_closure(F, E));
  CHECK(!in_closure(facet_of(qv({0, 1}), arr), F));
}

TEST_CASE("C arrangement and its tau-closure") {
  auto m = default_m(10);
  auto listed = arrangement_C_listed(m);
  CHECK(listed.size() == 11);
  auto arr = arrangement_C(m);
  for (auto n : std::vector<std::vector<std::int64_t>>{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}, {1, 0, -1}, {1, 0, 1}})
    CHECK(contains(arr, n));
  CHECK(tau_closure(arr) == arr);
  CHECK(arr.size() >= listed.size());
  for (const auto& h : listed) CHECK(contains(arr, h.normal));
}

TEST_CASE("chamber C1 and facets") {
  auto m = default_m(10);
  CHECK(in_chamber_C1(qv({2005, 1, 2000}), m));
  CHECK(!in_chamber_C1(qv({2100, 1, 2000}), m));  // t - t' too large
  CHECK(!in_chamber_C1(qv({2000, 1, 2000}), m));
  CHECK(!in_chamber_C1(qv({205, 3, 200}), m));     // t' below m2 s
  CHECK(facet_zero_classes(qv({1, 0, 1})) == std::vector<int>{1});
  auto arr = arrangement_C(m);
  auto C = facet_of(qv({2005, 1, 2000}), arr);
  CHECK(std::count(C.begin(), C.end(), 0) == 0);
  auto F = facet_of(qv({1, 0, 1}), arr);
  CHECK(in_closure(F, facet_of(qv({101, 1, 101}), arr)));
  CHECK(!in_closure(F, facet_of(qv({1, 1, 1}), arr)));
}

TEST_CASE("threshold ratio") {
  CHECK(threshold_ratio(1, 1, 10) == std::pair<std::int64_t, std::int64_t>{1, 1});
  CHECK(threshold_ratio(0, 5, 10) == std::pair<std::int64_t, std::int64_t>{0, 1});
  CHECK(threshold_ratio(7, 0, 10) == std::pair<std::int64_t, std::int64_t>{1, 0});
  CHECK(threshold_ratio(100, 1, 10) == std::pair<std::int64_t, std::int64_t>{10, 1});
  auto [k, j] = threshold_ratio(3, 7, 10);
  CHECK(k * 7 <= 3 * j);
  // Nothing strictly between k/j and 3/7 on the grid.
  for (std::int64_t jj = 1; jj <= 10; ++jj)
    for (std::int64_t kk = 1; kk <= 10; ++kk)
      if (kk * 7 <= 3 * jj) CHECK(kk * j <= k * jj);
}

TEST_CASE("region orders are admissible and positive on the target") {
  struct Case {
    std::string region;
    std::vector<std::int64_t> L;
  };
  std::vector<Case> cases{{"s-large", {11, 1}}, {"t-large", {1, 11}},     {"t-large", {21, 1, 1}}, {"t-large", {40, 2, 1}},
                          {"s-large", {1, 40, 2}}, {"apart", {250, 1, 120}}, {"near", {101, 1, 101}}, {"near", {150, 1, 101}}};
  for (const auto& c : cases) {
    CAPTURE(c.region);
    auto ord = order_for_region(c.region, c.L, 10);
    std::string why;
    CHECK_MESSAGE(ord->admissible(&why), why);
    auto theta = Specialization::to_weights(ord, c.L);
    CHECK(theta.well_defined());
    for (int i = 0; i < ord->rank(); ++i)
      if (c.L[static_cast<std::size_t>(i)] > 0) CHECK(ord->sign(ord->basis(i)) > 0);
  }
  CHECK_THROWS_AS(order_for_region("t-large", {20, 1, 1}, 10), std::invalid_argument);
  CHECK_THROWS_AS(order_for_region("apart", {250, 1, 245}, 10), std::invalid_argument);
  CHECK_THROWS_AS(order_for_region("near", {101, 0, 101}, 10), std::invalid_argument);
  CHECK_THROWS_AS(order_for_region("s-large", {5, 1}, 10), std::invalid_argument);
  CHECK_THROWS_AS(order_for_region("middle", {5, 1, 1}, 10), std::invalid_argument);
}

TEST_CASE("quotient orders kill the kernel of the witness") {
  auto o7 = order_for_region("near", {101, 1, 101}, 10);
  CHECK(o7->canonical(Gamma::unit(3, 0)) == o7->canonical(Gamma::unit(3, 2)));
  auto o4 = order_for_region("t-large", {21, 1, 1}, 10);
  CHECK(o4->canonical(Gamma::unit(3, 1)) == o4->canonical(Gamma::unit(3, 2)));
  // Off the threshold the order keeps full rank.
  auto o4b = order_for_region("t-large", {40, 2, 1}, 10);
  CHECK(o4b->canonical(Gamma::unit(3, 1)) != o4b->canonical(Gamma::unit(3, 2)));
}

TEST_CASE("Gamma_+ contents") {
  CoxeterGroup G(make_affine("C2"));
  Ball X(G, 6);
  auto ord = order_for_region("apart", {250, 1, 120}, 10);
  KLTable T(X, WeightFunction::generic(ord));
  auto gp = gamma_plus(T);
  // P_{e,s} = v^{-L(s)}
  CHECK(std::count(gp.from_P.begin(), gp.from_P.end(), ord->basis(1)) == 1);
  for (const auto& g : gp.all()) CHECK(ord->sign(g) > 0);
  auto rep = run_gate(T, {250, 1, 120}, "apart");
  CHECK(rep.ok);
  CHECK(rep.coordinate_bound);
  CHECK(rep.offenders.empty());

  Ball Y(G, 4);
  KLTable S(Y, WeightFunction::generic(ord));
  auto small = gamma_plus(S).all();
  auto all = gp.all();
  for (const auto& g : small) CHECK(std::binary_search(all.begin(), all.end(), g));
}

TEST_CASE("gate under the identity specialization") {
  CoxeterGroup G(make_affine("C2"));
  Ball X(G, 5);
  KLTable T(X, WeightFunction::integral({2, 1, 1}));
  // Integral weights live in Z, so the identity sends the generator to 1.
  REQUIRE(T.weights().group->rank() == 1);
  auto theta = Specialization::to_weights(T.weights().group, {1});
  CHECK(theta.well_defined());
  CHECK(check_specialization_gate(gamma_plus(T).all(), theta));
}

TEST_CASE("specialized table equals the direct one") {
  CoxeterGroup G(make_affine("C2"));
  Ball X(G, 6);
  std::vector<std::int64_t> L{21, 1, 1};
  KLTable generic(X, WeightFunction::generic(order_for_region("t-large", L, 10)));
  REQUIRE(run_gate(generic, L, "t-large").ok);
  auto target = WeightFunction::integral(L);
  auto theta = Specialization::to_weights(generic.weights().group, L);
  int spot = 0;
  auto imported = import_by_specialization(generic, theta, target, &spot);
  REQUIRE(imported.has_value());
  CHECK(spot > 0);
  KLTable direct(X, target);
  int mismatches = 0;
  for (int w = 0; w < X.size(); ++w)
    for (int y = 0; y <= w; ++y)
      if (imported->P(y, w) != direct.P(y, w)) ++mismatches;
  CHECK(mismatches == 0);
}

TEST_CASE("gate rejects a specialization that flips a sign") {
  CoxeterGroup G(make_affine("C2"));
  Ball X(G, 6);
  KLTable generic(X, WeightFunction::generic(order_for_region("t-large", {21, 1, 1}, 10)));
  // (3, 1, 1) reverses t > 10 s + 10 t' on some element of Gamma_+.
  auto rep = run_gate(generic, {3, 1, 1});
  CHECK(!rep.ok);
  CHECK(!rep.offenders.empty());
}

TEST_CASE("semicontinuity at a facet with one zero") {
  CoxeterGroup G(make_affine("C2"));
  auto arr = arrangement_C(default_m(10));
  auto rep = semicontinuity_check(G, {1, 0, 1}, {101, 1, 101}, 8, &arr);
  CHECK(rep.closure_checked);
  CHECK(rep.ok());
  CHECK(!rep.pieces.empty());
  CHECK(rep.cmin_left.size > 0);
  auto j = rep.to_json();
  CHECK(j["ok"] == true);
}

TEST_CASE("semicontinuity fails away from the closure") {
  CoxeterGroup G(make_affine("C2"));
  auto rep = semicontinuity_check(G, {2, 0, 1}, {4, 2, 3}, 10);
  CHECK(!rep.ok());
  bool straddle = false;
  for (const auto& p : rep.pieces) straddle |= !p.straddling.empty();
  CHECK(straddle);
}

TEST_CASE("weights in one chamber give the same partition") {
  CoxeterGroup G(make_affine("C2"));
  Ball X(G, 8);
  auto arr = arrangement_C(default_m(10));
  std::vector<std::int64_t> a{2005, 1, 2000}, b{3007, 1, 3000};
  REQUIRE(facet_of(qv(a), arr) == facet_of(qv(b), arr));
  KLTable Ta(X, WeightFunction::integral(a)), Tb(X, WeightFunction::integral(b));
  for (auto f : {Flavor::Left, Flavor::TwoSided})
    CHECK(sorted_classes(cell_preorder(Ta, f)) == sorted_classes(cell_preorder(Tb, f)));
}
