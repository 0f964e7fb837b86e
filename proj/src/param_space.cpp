#include "ac/param_space.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ac {

std::string RationalHyperplane::str() const {
  std::string s = "H(";
  for (std::size_t i = 0; i < normal.size(); ++i) s += (i ? "," : "") + std::to_string(normal[i]);
  return s + ")";
}

RationalHyperplane make_hyperplane(const std::vector<Q>& normal) {
  std::int64_t den = 1;
  for (const auto& q : normal) den = std::lcm(den, q.denominator());
  std::vector<std::int64_t> n;
  std::int64_t g = 0;
  for (const auto& q : normal) {
    n.push_back((q * Q(den)).numerator());
    g = std::gcd(g, std::abs(n.back()));
  }
  if (g == 0) throw std::invalid_argument("zero normal");
  auto first = std::find_if(n.begin(), n.end(), [](std::int64_t x) { return x != 0; });
  std::int64_t sign = *first < 0 ? -1 : 1;
  for (auto& x : n) x = sign * x / g;
  return {n};
}

std::vector<RationalHyperplane> tau_closure(std::vector<RationalHyperplane> hs) {
  std::set<RationalHyperplane> out(hs.begin(), hs.end());
  std::vector<RationalHyperplane> todo(hs.begin(), hs.end());
  while (!todo.empty()) {
    auto h = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < h.normal.size(); ++i) {
      std::vector<Q> n;
      for (std::size_t k = 0; k < h.normal.size(); ++k) n.emplace_back(k == i ? -h.normal[k] : h.normal[k]);
      auto f = make_hyperplane(n);
      if (out.insert(f).second) todo.push_back(f);
    }
  }
  return {out.begin(), out.end()};
}

namespace {

std::vector<RationalHyperplane> dedup(const std::vector<std::vector<Q>>& normals) {
  std::set<RationalHyperplane> out;
  for (const auto& n : normals) out.insert(make_hyperplane(n));
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<RationalHyperplane> arrangement_BFG(const Q& m1, const Q& m2) {
  if (m1 <= Q(0) || m2 <= Q(0)) throw std::invalid_argument("m1, m2 must be positive");
  return dedup({{Q(1), m1}, {Q(1), -m1}, {Q(1), m2}, {Q(1), -m2}, {Q(1), Q(0)}, {Q(0), Q(1)}});
}

std::vector<RationalHyperplane> arrangement_C_listed(const std::vector<Q>& m) {
  if (m.size() != 6) throw std::invalid_argument("six constants expected");
  for (const auto& x : m)
    if (x <= Q(0)) throw std::invalid_argument("constants must be positive");
  Q o(1), z(0);
  return dedup({
      {z, o, z},                 // s
      {o, z, z},                 // t
      {z, z, o},                 // t'
      {o, z, -o},                // t - t'
      {o, -m[0], z},             // t - m1 s
      {z, -m[1], o},             // t' - m2 s
      {o, -m[2], -m[2]},         // t - m3 (s + t')
      {-m[3], -m[3], o},         // t' - m4 (s + t)
      {o, m[4], -o},             // (t - t') + m5 s
      {o, -m[4], -o},            // (t - t') - m5 s
      {o, -m[5], o},             // (t + t') - m6 s
  });
}

std::vector<RationalHyperplane> arrangement_C(const std::vector<Q>& m) { return tau_closure(arrangement_C_listed(m)); }

std::vector<Q> default_m(int N0) {
  Q n(N0);
  return {n * n, n * n, n, n, n, Q(1) / n};
}

SignVector facet_of(const std::vector<Q>& L, const std::vector<RationalHyperplane>& arr) {
  SignVector out;
  for (const auto& h : arr) {
    if (h.normal.size() != L.size()) throw std::invalid_argument("dimension mismatch");
    Q v(0);
    for (std::size_t i = 0; i < L.size(); ++i) v += Q(h.normal[i]) * L[i];
    out.push_back(v > Q(0) ? 1 : (v < Q(0) ? -1 : 0));
  }
  return out;
}

std::vector<int> facet_zero_classes(const std::vector<Q>& L) {
  std::vector<int> out;
  for (std::size_t i = 0; i < L.size(); ++i)
    if (L[i] == Q(0)) out.push_back(static_cast<int>(i));
  return out;
}

bool in_closure(const SignVector& F, const SignVector& C) {
  if (F.size() != C.size()) return false;
  for (std::size_t i = 0; i < F.size(); ++i)
    if (F[i] != 0 && F[i] != C[i]) return false;
  return true;
}

bool in_chamber_C1(const std::vector<Q>& L, const std::vector<Q>& m) {
  const Q &t = L[0], &s = L[1], &tp = L[2];
  return t > tp && tp > m[1] * s && t - tp < m[4] * s;
}

std::vector<Gamma> GammaPlus::all() const {
  std::set<Gamma> s(from_P.begin(), from_P.end());
  s.insert(from_M.begin(), from_M.end());
  s.insert(from_sum.begin(), from_sum.end());
  return {s.begin(), s.end()};
}

GammaPlus gamma_plus(const KLTable& T) {
  const Ball& X = T.ball();
  const OrderedGroup& ord = *T.order();
  const Hecke& H = T.hecke();
  std::set<Gamma> g1, g2, g3;
  for (int w = 0; w < X.size(); ++w) {
    for (const auto& [y, p] : T.C(w)) {
      if (y == w) continue;
      for (const auto& term : p.terms()) g1.insert(ord.canonical(-term.first));
    }
    for (int s = 0; s < X.group().num_gens(); ++s) {
      const auto& Mw = T.M(s, w);
      for (const auto& [z, m] : Mw) {
        const auto& terms = m.terms();  // decreasing exponents
        for (std::size_t i = 0; i + 1 < terms.size(); ++i) g2.insert(ord.canonical(terms[i].first - terms[i + 1].first));
      }
      if (H.zero_weight(s) || X.left_descent(s, w)) continue;
      // sum_{y <= z < w, sz < z} P_{y,z} M_{z,w} - v_s P_{y,w} for y < w with sy < y.
      for (int y = 0; y < w; ++y) {
        if (!X.left_descent(s, y) || !X.bruhat_leq(y, w)) continue;
        Laurent q = -(H.v(s) * T.P(y, w));
        for (const auto& [z, m] : Mw) q += T.P(y, z) * m;
        for (const auto& term : q.terms())
          if (ord.sign(term.first) < 0) g3.insert(ord.canonical(-term.first));
      }
    }
  }
  return {{g1.begin(), g1.end()}, {g2.begin(), g2.end()}, {g3.begin(), g3.end()}};
}

bool check_specialization_gate(const std::vector<Gamma>& gammas, const Specialization& theta,
                               std::vector<Gamma>* offenders) {
  bool ok = true;
  for (const auto& g : gammas)
    if (theta.target->sign(theta(g)) <= 0) {
      ok = false;
      if (offenders) offenders->push_back(g);
    }
  return ok;
}

std::pair<std::int64_t, std::int64_t> threshold_ratio(std::int64_t p, std::int64_t q, int N) {
  if (q == 0) return {1, 0};
  std::pair<std::int64_t, std::int64_t> best{0, 1};
  for (std::int64_t j = 1; j <= N; ++j)
    for (std::int64_t k = 1; k <= N; ++k)
      // k/j <= p/q and k/j > best
      if (k * q <= p * j && k * best.second > best.first * j) best = {k, j};
  return best;
}

namespace {

// phi_2 = num·u1^* + den·u2^* on the plane spanned by u1, u2; phi_3 breaks the remaining tie
// in the direction where the target is positive.
std::vector<OrderedGroup::Row> plane_forms(OrderedGroup::Row phi1, const OrderedGroup::Row& e1,
                                           const OrderedGroup::Row& e2, std::int64_t p, std::int64_t q, int N) {
  auto [num, den] = threshold_ratio(p, q, N);
  OrderedGroup::Row phi2(phi1.size());
  for (std::size_t i = 0; i < phi1.size(); ++i) phi2[i] = num * e1[i] + den * e2[i];
  std::vector<OrderedGroup::Row> forms{std::move(phi1), phi2};
  // Target on the kernel vector den·u1 - num·u2 is den p - num q >= 0.
  if (den * p - num * q != 0) forms.push_back(e1);
  return forms;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument("weight outside the region: " + what);
}

}  // namespace

GroupPtr order_for_region(const std::string& region, const std::vector<std::int64_t>& L, int N) {
  for (auto x : L) require(x >= 0, "weights must be non-negative");
  if (L.size() == 2) {
    // (s, t)
    if (region == "s-large") {
      require(L[0] > N * L[1], "L(s) > N L(t)");
      return std::make_shared<OrderedGroup>(2, std::vector<OrderedGroup::Row>{{1, 0}, {0, 1}}, std::vector<bool>{true, false});
    }
    if (region == "t-large") {
      require(L[1] > N * L[0], "L(t) > N L(s)");
      return std::make_shared<OrderedGroup>(2, std::vector<OrderedGroup::Row>{{0, 1}, {1, 0}}, std::vector<bool>{false, true});
    }
    throw std::invalid_argument("unknown region " + region + " for two classes");
  }
  require(L.size() == 3, "three classes (t, s, t')");
  std::int64_t t = L[0], s = L[1], tp = L[2];
  std::int64_t N2 = static_cast<std::int64_t>(N) * N;
  if (region == "t-large") {
    require(t > N * s + N * tp, "L(t) > N L(s) + N L(t')");
    return std::make_shared<OrderedGroup>(3, plane_forms({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, s, tp, N),
                                          std::vector<bool>{true, false, false});
  }
  if (region == "s-large") {
    require(s > N * t + N * tp, "L(s) > N L(t) + N L(t')");
    return std::make_shared<OrderedGroup>(3, plane_forms({0, 1, 0}, {1, 0, 0}, {0, 0, 1}, t, tp, N),
                                          std::vector<bool>{false, true, false});
  }
  if (region == "apart") {
    require(t > N2 * s && tp > N2 * s && t - tp > N * s, "L(t), L(t') > N^2 L(s), L(t) - L(t') > N L(s)");
    return std::make_shared<OrderedGroup>(3, std::vector<OrderedGroup::Row>{{1, 0, 1}, {1, 0, 0}, {0, 1, 0}},
                                          std::vector<bool>{true, false, true});
  }
  if (region == "near") {
    require(t > N2 * s && tp > N2 * s && s > 0, "L(t), L(t') > N^2 L(s) > 0");
    require(t >= tp, "L(t) >= L(t')");
    // u1 = (1, 0, -1) seen through its first coordinate, u2 = s.
    return std::make_shared<OrderedGroup>(3, plane_forms({1, 0, 1}, {1, 0, 0}, {0, 1, 0}, t - tp, s, N),
                                          std::vector<bool>{true, false, true});
  }
  throw std::invalid_argument("unknown region " + region);
}

nlohmann::json GateReport::to_json() const {
  return {{"ok", ok},
          {"region", region},
          {"order", order},
          {"gamma_plus", {{"P", gamma1}, {"M", gamma2}, {"sum", gamma3}}},
          {"coordinate_bound", coordinate_bound},
          {"offenders", offenders}};
}

GateReport run_gate(const KLTable& generic, const std::vector<std::int64_t>& target, const std::string& region) {
  GateReport rep;
  rep.region = region;
  rep.order = generic.order()->str();
  auto G = gamma_plus(generic);
  rep.gamma1 = G.from_P.size();
  rep.gamma2 = G.from_M.size();
  rep.gamma3 = G.from_sum.size();
  auto all = G.all();
  int N = generic.ball().radius();
  for (const auto& g : all)
    for (auto c : g.to_vector())
      if (c < -N || c > N) rep.coordinate_bound = false;
  auto theta = Specialization::to_weights(generic.weights().group, target);
  if (!theta.well_defined()) {
    rep.offenders.push_back("specialization does not kill the kernel");
    return rep;
  }
  std::vector<Gamma> bad;
  rep.ok = check_specialization_gate(all, theta, &bad);
  for (const auto& g : bad) rep.offenders.push_back(g.str());
  return rep;
}

std::optional<KLTable> import_by_specialization(const KLTable& generic, const Specialization& theta,
                                                const WeightFunction& target, int* spot_checked) {
  if (!check_specialization_gate(gamma_plus(generic).all(), theta)) return std::nullopt;
  KLTable R = KLTable::specialized(generic, theta, target);
  int checked = 0;
  for (int w = 0; w < R.size(); w += 10) {
    ++checked;
    const auto& c = R.C(w);
    if (R.hecke().bar(c) != c) return std::nullopt;
    for (const auto& [y, p] : c)
      if (y != w && !p.is_strictly_negative()) return std::nullopt;
  }
  if (spot_checked) *spot_checked = checked;
  return R;
}

bool SemicontinuityReport::ok() const {
  if (!closure_ok) return false;
  for (const auto& p : pieces)
    if (!p.ok) return false;
  return cmin_left.ok && cmin_two_sided.ok;
}

namespace {

nlohmann::json piece_json(const PieceReport& p) {
  return {{"sigma", p.sigma}, {"b_sigma", p.b_sigma}, {"size", p.size}, {"chamber_classes", p.classes},
          {"ok", p.ok}, {"straddling", p.straddling}};
}

PieceReport union_of_classes(const Ball& X, const std::vector<bool>& in, const CellPartition& cp) {
  PieceReport r;
  for (bool b : in) r.size += b;
  for (const auto& K : cp.classes) {
    int hits = 0;
    for (int i : K) hits += in[static_cast<std::size_t>(i)];
    if (hits == static_cast<int>(K.size())) ++r.classes;
    if (hits > 0 && hits < static_cast<int>(K.size())) {
      r.ok = false;
      std::string s = "{";
      for (std::size_t k = 0; k < K.size() && k < 6; ++k) s += (k ? "," : "") + X.str(K[k]);
      if (K.size() > 6) s += ",...";
      r.straddling.push_back(s + "}");
    }
  }
  return r;
}

}  // namespace

nlohmann::json SemicontinuityReport::to_json() const {
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : pieces) ps.push_back(piece_json(p));
  return {{"facet", facet},
          {"chamber", chamber},
          {"ball_N", N},
          {"closure_checked", closure_checked},
          {"closure_ok", closure_ok},
          {"pieces", ps},
          {"cmin_left", piece_json(cmin_left)},
          {"cmin_two_sided", piece_json(cmin_two_sided)},
          {"truncations", truncated_edges},
          {"ok", ok()}};
}

SemicontinuityReport semicontinuity_check(const CoxeterGroup& G, const std::vector<std::int64_t>& facet,
                                          const std::vector<std::int64_t>& chamber, int N,
                                          const std::vector<RationalHyperplane>* arrangement,
                                          const KLTable* chamber_table) {
  SemicontinuityReport rep;
  rep.facet = facet;
  rep.chamber = chamber;
  rep.N = N;
  if (arrangement) {
    std::vector<Q> f(facet.begin(), facet.end()), c(chamber.begin(), chamber.end());
    rep.closure_checked = true;
    rep.closure_ok = in_closure(facet_of(f, *arrangement), facet_of(c, *arrangement));
    if (!rep.closure_ok) throw std::invalid_argument("facet is not in the closure of the chamber");
  }
  std::optional<Ball> own_ball;
  std::optional<KLTable> own_table;
  if (!chamber_table || chamber_table->ball().radius() != N) {
    own_ball.emplace(G, N);
    own_table.emplace(*own_ball, WeightFunction::integral(chamber));
    chamber_table = &*own_table;
  }
  const Ball& X = chamber_table->ball();
  auto left = cell_preorder(*chamber_table, Flavor::Left);
  auto two = cell_preorder(*chamber_table, Flavor::TwoSided);
  rep.truncated_edges = left.truncated_edges;

  Geometry geo(G, WeightFunction::integral(facet));
  LowestCell C(geo);
  auto in_cmin = C.by_geometry(X);
  for (const auto& cell : C.sigma_cells(X)) {
    std::vector<bool> in(static_cast<std::size_t>(X.size()), false);
    for (int i : cell.members) in[static_cast<std::size_t>(i)] = true;
    auto p = union_of_classes(X, in, left);
    p.sigma = cell.sigma;
    p.b_sigma = G.str(cell.b_sigma);
    rep.pieces.push_back(p);
  }
  rep.cmin_left = union_of_classes(X, in_cmin, left);
  rep.cmin_two_sided = union_of_classes(X, in_cmin, two);
  return rep;
}

}  // namespace ac
