#include "ac/lowest_cell.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace ac {

namespace {

using ShiSet = std::unordered_set<std::vector<std::int64_t>, ShiHash>;

// All v with x = p·v length-additive, for every prefix p of x: the contiguous factors of x.
ShiSet factors(const CoxeterGroup& G, const GroupElement& x) {
  ShiSet prefix_seen{x.shi}, out;
  std::vector<GroupElement> prefixes{x};
  for (std::size_t i = 0; i < prefixes.size(); ++i)
    for (int s : G.descents_right(prefixes[i])) {
      auto p = G.times_generator(prefixes[i], s);
      if (prefix_seen.insert(p.shi).second) prefixes.push_back(p);
    }
  for (const auto& p : prefixes) {
    if (out.count(p.shi)) continue;
    std::vector<GroupElement> st{p};
    out.insert(p.shi);
    while (!st.empty()) {
      auto q = st.back();
      st.pop_back();
      for (int s : G.descents_left(q)) {
        auto r = G.apply_generator(s, q);
        if (out.insert(r.shi).second) st.push_back(r);
      }
    }
  }
  return out;
}

// Product of ball elements, falling back to exact composition when a generator step leaves the ball.
int ball_product(const Ball& X, int x, int y) {
  int k = X.mul(x, y);
  if (k >= 0) return k;
  return X.index(X.group().multiply(X[x], X[y]));
}

}  // namespace

bool LowestCell::in_cmin(const GroupElement& w) const { return !geo_->in_U(w); }

bool LowestCell::in_cmin_algebraic(const GroupElement& w) const {
  auto F = factors(geo_->group(), w);
  for (const auto& u : geo_->wmax())
    if (F.count(u.shi)) return true;
  return false;
}

std::vector<bool> LowestCell::by_geometry(const Ball& X) const {
  std::vector<bool> out(static_cast<std::size_t>(X.size()));
  for (int i = 0; i < X.size(); ++i) out[static_cast<std::size_t>(i)] = in_cmin(X[i]);
  return out;
}

std::vector<bool> LowestCell::by_definition(const Ball& X) const {
  std::vector<bool> out(static_cast<std::size_t>(X.size()));
  for (int i = 0; i < X.size(); ++i) out[static_cast<std::size_t>(i)] = in_cmin_algebraic(X[i]);
  return out;
}

std::vector<bool> LowestCell::by_weight_additive(const Ball& X, const std::vector<GroupElement>& middles) const {
  const auto& G = geo_->group();
  const auto& ord = geo_->order();
  std::vector<Gamma> Lw;
  for (int i = 0; i < X.size(); ++i) Lw.push_back(G.weight_of_word(geo_->weights(), X.word(i)));
  std::vector<bool> out(static_cast<std::size_t>(X.size()), false);
  for (const auto& um : middles) {
    int u = X.index(um);
    if (u < 0) continue;
    for (int y = 0; y < X.size(); ++y) {
      int z = ball_product(X, u, y);
      if (z < 0 || Lw[z] != ord.canonical(Lw[u] + Lw[y])) continue;
      for (int x = 0; x < X.size(); ++x) {
        int w = ball_product(X, x, z);
        if (w >= 0 && Lw[w] == ord.canonical(Lw[x] + Lw[z])) out[static_cast<std::size_t>(w)] = true;
      }
    }
  }
  return out;
}

std::vector<GroupElement> LowestCell::special_longest() const {
  std::vector<GroupElement> out;
  const auto& G = geo_->group();
  for (int i = 0; i < G.num_gens(); ++i) {
    const auto& P = geo_->maximal_parabolic(i);
    if (G.weight_of(geo_->weights(), P.longest) == geo_->nu()) out.push_back(P.longest);
  }
  return out;
}

std::vector<bool> LowestCell::description_B(const Ball& X) const { return by_weight_additive(X, special_longest()); }

GroupElement LowestCell::w_circ(const Quarter& q) const {
  std::vector<int> I0;
  for (int s : q.S_lambda)
    if (std::find(geo_->S_circ().begin(), geo_->S_circ().end(), s) != geo_->S_circ().end()) I0.push_back(s);
  return strip_right(geo_->group(), geo_->longest(q.S_lambda), I0).first;
}

CminDecomposition LowestCell::decompose(const GroupElement& w) const {
  const auto& G = geo_->group();
  int sigma = geo_->quarter_of(w);
  if (sigma < 0) throw std::invalid_argument("element is not in the lowest cell");
  const Quarter& q = geo_->quarters()[static_cast<std::size_t>(sigma)];
  std::vector<int> I0;
  for (int s : q.S_lambda)
    if (std::find(geo_->S_circ().begin(), geo_->S_circ().end(), s) != geo_->S_circ().end()) I0.push_back(s);
  auto wb = G.multiply(w, G.invert(q.b_sigma));
  auto [x, u] = strip_right(G, wb, q.S_lambda);
  auto [a, rest] = strip_left(G, u, I0);
  CminDecomposition d{sigma, x, a, rest, q.b_sigma};
  if (rest != w_circ(q)) throw std::logic_error("middle factor is not w°_lambda for " + G.str(w));
  return d;
}

std::vector<SigmaCell> LowestCell::sigma_cells(const Ball& X) const {
  std::vector<SigmaCell> cells;
  for (const auto& q : geo_->quarters()) cells.push_back({q.id, q.b_sigma, {}});
  for (int i = 0; i < X.size(); ++i) {
    int s = geo_->quarter_of(X[i]);
    if (s >= 0) cells[static_cast<std::size_t>(s)].members.push_back(i);
  }
  return cells;
}

namespace {

// Coordinates of v in the basis given by rows (which span V); complement directions are ignored.
std::optional<QVec> coordinates(const RootSystem& R, const std::vector<QVec>& basis, const QVec& v) {
  int r = static_cast<int>(basis.size());
  QMat A(R.dim, r + static_cast<int>(R.complement.size()));
  for (int j = 0; j < r; ++j) A.col(j) = basis[static_cast<std::size_t>(j)];
  for (std::size_t j = 0; j < R.complement.size(); ++j) A.col(r + static_cast<int>(j)) = R.complement[j];
  auto c = solve_exact(A, v);
  if (!c) return std::nullopt;
  return QVec(c->head(r));
}

// H_{beta,0} meets the open cone {(v, d_i) > 0}: beta has coordinates of both signs in the dual basis.
bool hyperplane_meets_cone(const RootSystem& R, const std::vector<QVec>& walls, const QVec& beta) {
  // (v, beta) = sum c_i (v, d_i) where beta = sum c_i d_i.
  auto c = coordinates(R, walls, beta);
  if (!c) throw std::logic_error("cone walls do not span");
  bool pos = false, neg = false;
  for (Eigen::Index i = 0; i < c->size(); ++i) {
    if ((*c)(i) > 0) pos = true;
    if ((*c)(i) < 0) neg = true;
  }
  return pos && neg;
}

bool pairing_ok(const Q& v, bool positive_image) {
  if (is_integer(v)) return true;
  return positive_image ? (Q(0) < v && v < Q(1)) : (Q(-1) < v && v < Q(0));
}

}  // namespace

Claim3Report verify_claim3prime(const Geometry& geo) {
  const auto& R = geo.group().roots();
  Claim3Report rep;
  std::vector<QVec> simple;
  for (int a : geo.simple_L()) simple.push_back(R.positive[a]);
  for (int g = 0; g < R.num_positive(); ++g) {
    if (geo.in_phiL(g)) continue;
    if (hyperplane_meets_cone(R, simple, R.positive[g])) {
      rep.frakB.push_back(R.positive[g]);
      rep.frakB.push_back(-R.positive[g]);
    }
  }
  std::set<std::vector<bool>> seen_patterns;
  for (const auto& q : geo.quarters()) {
    std::vector<Q> rhs;
    std::vector<bool> pattern;
    for (int a : geo.simple_L()) {
      bool plus = R.find(q.sigma * R.positive[a]) >= 0;
      pattern.push_back(plus);
      Q b(0);
      if (plus) b = geo.hyperplane_weight({a, 0}) == geo.hyperplane_weight({a, 1}) ? Q(1) : Q(2);
      rhs.push_back(b);
    }
    seen_patterns.insert(pattern);
    int m = static_cast<int>(simple.size() + R.complement.size());
    QMat A(m, R.dim);
    QVec rv(m);
    for (std::size_t i = 0; i < simple.size(); ++i) {
      A.row(static_cast<Eigen::Index>(i)) = simple[i].transpose();
      rv(static_cast<Eigen::Index>(i)) = rhs[i];
    }
    for (std::size_t j = 0; j < R.complement.size(); ++j) {
      A.row(static_cast<Eigen::Index>(simple.size() + j)) = R.complement[j].transpose();
      rv(static_cast<Eigen::Index>(simple.size() + j)) = Q(0);
    }
    auto lam = solve_exact(A, rv);
    if (!lam) throw std::logic_error("vertex of a sign pattern is not determined");
    for (const auto& gamma : rep.frakB) {
      Q v = dot(*lam, gamma);
      rep.values.push_back(v);
      bool plus = R.find(q.sigma * gamma) >= 0;
      if (!pairing_ok(v, plus)) {
        rep.ok = false;
        rep.failures.push_back("sigma " + std::to_string(q.id) + " gamma " + to_string(gamma) + " pairing " +
                               to_string(v));
      }
    }
  }
  rep.patterns = static_cast<int>(seen_patterns.size());
  return rep;
}

Claim3Report verify_claim3(const Geometry& geo) {
  const auto& R = geo.group().roots();
  Claim3Report rep;
  for (const auto& q : geo.quarters()) {
    std::vector<QVec> walls;
    for (int a : geo.simple_L()) walls.push_back(q.sigma * R.positive[a]);
    ++rep.patterns;
    for (int b = 0; b < R.num_positive(); ++b) {
      if (!hyperplane_meets_cone(R, walls, R.positive[b])) continue;
      Q v = dot(q.lambda, R.positive[b]);
      rep.values.push_back(v);
      if (!(is_integer(v) || (Q(0) < v && v < Q(1)))) {
        rep.ok = false;
        rep.failures.push_back("sigma " + std::to_string(q.id) + " beta " + to_string(R.positive[b]) +
                               " pairing " + to_string(v));
      }
    }
  }
  return rep;
}

std::vector<Claim3Case> claim3_cases() {
  return {
      {"G2", {"t"}, {1, 0}},
      {"G2", {"s1", "s2"}, {0, 1}},
      {"F4", {"s1", "s2"}, {0, 1}},
      {"F4", {"t1", "t2", "t3"}, {1, 0}},
      {"B3", {"t"}, {1, 0}},
      {"B3", {"s1", "s2", "s3"}, {0, 1}},
      {"B4", {"t"}, {1, 0}},
      {"B4", {"s1", "s2", "s3", "s4"}, {0, 1}},
      {"C2", {"t'"}, {1, 1, 0}},
      {"C2", {"s"}, {1, 0, 1}},
      {"C2", {"s"}, {2, 0, 1}},
      {"C2", {"s", "t'"}, {1, 0, 0}},
      {"C2", {"t", "t'"}, {0, 1, 0}},
      {"C3", {"t'"}, {1, 1, 0}},
      {"C3", {"s1", "s2"}, {1, 0, 1}},
      {"C3", {"s1", "s2"}, {2, 0, 1}},
      {"C3", {"s1", "s2", "t'"}, {1, 0, 0}},
      {"C3", {"t", "t'"}, {0, 1, 0}},
  };
}

WeightFunction weight_with_zeros(const AffineSystem& S, const std::vector<std::string>& zero,
                                 const std::vector<std::int64_t>& positive_values) {
  std::vector<std::int64_t> w(static_cast<std::size_t>(S.num_classes()), 1);
  for (int c = 0; c < S.num_classes() && c < static_cast<int>(positive_values.size()); ++c)
    w[static_cast<std::size_t>(c)] = positive_values[static_cast<std::size_t>(c)];
  for (const auto& name : zero) {
    int s = S.gen_index(name);
    if (s < 0) throw std::invalid_argument("unknown generator " + name);
    w[static_cast<std::size_t>(S.class_of[s])] = 0;
  }
  return WeightFunction::integral(w);
}

SemidirectReport cmin_semidirect_check(const Geometry& geo, int N) {
  const auto& G = geo.group();
  SemidirectReport rep;
  LowestCell C(geo);
  Ball X(G, N);
  auto Wc = parabolic(G, geo.S_circ());
  if (!Wc.finite) throw std::invalid_argument("W° must be finite");
  int extra = G.length(Wc.longest);
  Ball Y(G, N + extra);

  // Elements of W~ reachable inside the larger ball.
  std::vector<GroupElement> tilde;
  for (const auto& y : Y.elements()) {
    auto f = geo.semidirect_factor(y);
    if (f.w_circ == G.identity()) tilde.push_back(y);
  }
  int nq = static_cast<int>(geo.quarters().size());
  std::vector<ShiSet> lhs(static_cast<std::size_t>(nq + 1)), rhs(static_cast<std::size_t>(nq + 1));
  for (const auto& x : X.elements()) {
    if (!C.in_cmin(x)) continue;
    lhs[0].insert(x.shi);
    int q = geo.quarter_of(x);
    if (q >= 0) lhs[static_cast<std::size_t>(q + 1)].insert(x.shi);
  }
  for (const auto& wt : tilde) {
    // The strips of the tilde system around its base chamber are those of L around A0.
    if (geo.in_U(wt)) continue;
    int q = geo.quarter_of(wt);
    for (const auto& wc : Wc.elements) {
      auto w = G.multiply(wc, wt);
      if (G.length(w) > N) continue;
      rhs[0].insert(w.shi);
      if (q >= 0) rhs[static_cast<std::size_t>(q + 1)].insert(w.shi);
    }
  }
  for (int k = 0; k <= nq; ++k) {
    ++rep.checked;
    if (lhs[static_cast<std::size_t>(k)] != rhs[static_cast<std::size_t>(k)]) {
      rep.ok = false;
      rep.failures.push_back(k == 0 ? "c_min" : "N_sigma " + std::to_string(k - 1));
    }
  }
  return rep;
}

}  // namespace ac
