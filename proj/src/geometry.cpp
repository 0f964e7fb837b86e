#include "ac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ac {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t g) { return ((a % g) + g) % g; }

std::vector<int> complement_of(int n, const std::vector<int>& I) {
  std::vector<int> out;
  for (int s = 0; s < n; ++s)
    if (std::find(I.begin(), I.end(), s) == I.end()) out.push_back(s);
  return out;
}

// Solves (x, rows_i) = rhs_i together with (x, c) = 0 for the complement directions.
std::optional<QVec> solve_pairings(const RootSystem& R, const std::vector<QVec>& rows,
                                   const std::vector<Q>& rhs) {
  int m = static_cast<int>(rows.size() + R.complement.size());
  QMat A(m, R.dim);
  QVec b(m);
  int k = 0;
  for (std::size_t i = 0; i < rows.size(); ++i, ++k) {
    A.row(k) = rows[i].transpose();
    b(k) = rhs[i];
  }
  for (const auto& c : R.complement) {
    A.row(k) = c.transpose();
    b(k) = Q(0);
    ++k;
  }
  return solve_exact(A, b);
}

}  // namespace

Geometry::Geometry(const CoxeterGroup& G, WeightFunction L) : G_(&G), L_(std::move(L)) {
  const auto& S = G.sys();
  const auto& R = S.R;
  if (L_.num_classes() != S.num_classes()) throw std::invalid_argument("weight function has the wrong number of classes");
  if (!L_.non_negative()) throw std::invalid_argument("weight function must be non-negative");
  const auto& ord = *L_.group;
  for (int a = 0; a < R.num_positive(); ++a) {
    std::int64_t g = S.coroot_gcd[a];
    std::vector<Gamma> w;
    Gamma best = ord.zero();
    for (std::int64_t r = 0; r < g; ++r) {
      w.push_back(L_[S.class_of_hyperplane({a, r})]);
      if (ord.compare(w.back(), best) > 0) best = w.back();
    }
    weight_mod_.push_back(w);
    L_alpha_.push_back(best);
    phiL_.push_back(ord.sign(best) > 0);
    if (phiL_.back()) phiL_pos_.push_back(a);
  }
  for (int a : phiL_pos_) {
    bool decomposable = false;
    for (int b : phiL_pos_) {
      if (b == a) continue;
      int c = R.find(R.positive[a] - R.positive[b]);
      if (c >= 0 && phiL_[c]) decomposable = true;
    }
    if (!decomposable) simple_L_.push_back(a);
  }
  for (int s = 0; s < S.num_gens(); ++s) (L_.is_zero_on(S.class_of[s]) ? S_circ_ : S_plus_).push_back(s);

  std::set<std::vector<std::int64_t>> seen;
  for (int i = 0; i < S.num_gens(); ++i) {
    std::vector<int> I;
    for (int s = 0; s < S.num_gens(); ++s)
      if (s != i) I.push_back(s);
    maximal_.push_back(parabolic(G, I));
    for (const auto& w : maximal_.back().elements)
      if (seen.insert(w.shi).second) finite_union_.push_back(w);
  }
  std::vector<std::pair<std::vector<int>, GroupElement>> tagged;
  for (auto& w : finite_union_) tagged.emplace_back(G.reduced_word(w), w);
  std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
    return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
  });
  finite_union_.clear();
  nu_ = ord.zero();
  std::vector<Gamma> weights;
  for (auto& [w, x] : tagged) {
    finite_union_.push_back(x);
    weights.push_back(G.weight_of_word(L_, w));
    if (ord.compare(weights.back(), nu_) > 0) nu_ = weights.back();
  }
  for (std::size_t i = 0; i < finite_union_.size(); ++i)
    if (weights[i] == nu_) wmax_.push_back(finite_union_[i]);

  if (static_cast<int>(S_circ_.size()) < S.num_gens()) {
    auto Wc = parabolic(G, S_circ_);
    std::set<std::vector<std::int64_t>> gseen;
    for (const auto& w : Wc.elements)
      for (int s : S_plus_) {
        auto c = G.multiply(G.multiply(w, G.generator(s)), G.invert(w));
        if (gseen.insert(c.shi).second) tilde_gens_.push_back(c);
      }
  }
  if (!phiL_pos_.empty()) build_quarters();
}

Gamma Geometry::hyperplane_weight(const Hyperplane& h) const {
  const auto& w = weight_mod_[static_cast<std::size_t>(h.alpha)];
  return w[static_cast<std::size_t>(mod(h.n, static_cast<std::int64_t>(w.size())))];
}

bool Geometry::is_maximal(const Hyperplane& h) const { return hyperplane_weight(h) == root_weight(h.alpha); }

std::pair<std::int64_t, std::int64_t> Geometry::strip(int alpha, std::int64_t f) const {
  if (!in_phiL(alpha)) throw std::invalid_argument("strip requested for a root of weight zero");
  std::int64_t lo = f, hi = f + 1;
  while (!is_maximal({alpha, lo})) --lo;
  while (!is_maximal({alpha, hi})) ++hi;
  return {lo, hi};
}

bool Geometry::in_U(const GroupElement& x) const {
  for (int a : phiL_pos_) {
    auto [lo, hi] = base_strip(a);
    std::int64_t f = x.shi[static_cast<std::size_t>(a)];
    if (lo <= f && f < hi) return true;
  }
  return false;
}

std::vector<Hyperplane> Geometry::separating_L(const GroupElement& a, const GroupElement& b) const {
  std::vector<Hyperplane> out;
  for (const auto& h : G_->separating(a, b))
    if (positive(h)) out.push_back(h);
  return out;
}

int Geometry::count_L(const GroupElement& a, const GroupElement& b) const {
  int c = 0;
  for (std::size_t i = 0; i < a.shi.size(); ++i) {
    if (!phiL_[i]) continue;
    auto [lo, hi] = crossing(a.shi[i], b.shi[i]);
    for (std::int64_t n = lo; n <= hi; ++n)
      if (positive({static_cast<int>(i), n})) ++c;
  }
  return c;
}

Gamma Geometry::weight_by_hyperplanes(const GroupElement& x) const {
  Gamma s = order().zero();
  for (const auto& h : separating_L(G_->identity(), x)) s = s + hyperplane_weight(h);
  return order().canonical(s);
}

GroupElement Geometry::longest(const std::vector<int>& I) const {
  auto P = parabolic(*G_, I);
  if (!P.finite) throw std::invalid_argument("parabolic subgroup is infinite");
  return P.longest;
}

Gamma Geometry::point_weight(const QVec& lambda) const {
  const auto& R = G_->roots();
  Gamma s = order().zero();
  for (int a = 0; a < R.num_positive(); ++a) {
    Q v = dot(lambda, R.positive[a]);
    if (is_integer(v)) s = s + hyperplane_weight({a, v.numerator()});
  }
  return order().canonical(s);
}

bool Geometry::special_by_max_hyperplanes(const QVec& lambda) const {
  const auto& R = G_->roots();
  for (int a : phiL_pos_) {
    Q v = dot(lambda, R.positive[a]);
    if (!is_integer(v) || !is_maximal({a, v.numerator()})) return false;
  }
  return true;
}

bool Geometry::special_by_lattice(const QVec& lambda) const {
  const auto& S = G_->sys();
  const auto& R = S.R;
  bool unequal_C = false;
  if (S.is_C()) {
    int t = S.class_index("t"), tp = S.class_index("t'");
    unequal_C = order().compare(L_[t], L_[tp]) != 0;
  }
  if (!unequal_C) {
    for (int a : phiL_pos_)
      if (!is_integer(dot(lambda, R.positive[a]))) return false;
    return true;
  }
  // Lattice spanned by the coroots of Phi^L.
  QMat A(R.dim, static_cast<Eigen::Index>(simple_L_.size()));
  for (std::size_t j = 0; j < simple_L_.size(); ++j) A.col(static_cast<Eigen::Index>(j)) = R.coroot(simple_L_[j]);
  auto c = solve_exact(A, lambda);
  if (!c) return false;
  for (Eigen::Index i = 0; i < c->size(); ++i)
    if (!is_integer((*c)(i))) return false;
  return true;
}

std::vector<SpecialPoint> Geometry::vertices_in_box(const Q& lo, const Q& hi, bool special_only) const {
  const auto& S = G_->sys();
  auto inside = [&](const QVec& v, const Q& a, const Q& b) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v(i) < a || v(i) > b) return false;
    return true;
  };
  std::map<std::vector<std::int64_t>, SpecialPoint> found;
  std::set<std::vector<std::int64_t>> seen;
  std::deque<GroupElement> q{G_->identity()};
  seen.insert(q.front().shi);
  while (!q.empty()) {
    GroupElement x = q.front();
    q.pop_front();
    for (int i = 0; i < S.num_gens(); ++i) {
      QVec v = x.g(S.a0_vertices[static_cast<std::size_t>(i)]);
      if (!inside(v, lo, hi)) continue;
      auto key = qkey(v);
      if (found.count(key)) continue;
      SpecialPoint p;
      p.lambda = v;
      p.type = i;
      for (int s = 0; s < S.num_gens(); ++s)
        if (s != i) p.S_lambda.push_back(s);
      p.L_lambda = point_weight(v);
      found.emplace(key, p);
    }
    for (int s = 0; s < S.num_gens(); ++s) {
      GroupElement y = G_->apply_generator(s, x);
      if (seen.count(y.shi) || !inside(y.center(S), lo - Q(1), hi + Q(1))) continue;
      seen.insert(y.shi);
      q.push_back(y);
    }
  }
  std::vector<SpecialPoint> out;
  for (auto& [k, p] : found)
    if (!special_only || p.L_lambda == nu_) out.push_back(p);
  return out;
}

GroupElement Geometry::alcove_at(const QVec& p) const {
  const auto& S = G_->sys();
  const auto& R = S.R;
  for (const auto& a : R.positive)
    if (is_integer(dot(p, a))) throw std::invalid_argument("point lies on a hyperplane");
  GroupElement x = G_->identity();
  bool moved = true;
  while (moved) {
    moved = false;
    QVec c = x.center(S);
    for (int s = 0; s < S.num_gens(); ++s) {
      Hyperplane h = transform(R, x.g, S.walls[s]);
      Q u = dot(c, R.positive[h.alpha]) - Q(h.n), v = dot(p, R.positive[h.alpha]) - Q(h.n);
      if ((u < 0) != (v < 0)) {
        x = G_->apply_generator(s, x);
        moved = true;
        break;
      }
    }
  }
  return x;
}

int Geometry::vertex_type(const GroupElement& x, const QVec& lambda) const {
  const auto& S = G_->sys();
  for (int i = 0; i < S.num_gens(); ++i)
    if (x.g(S.a0_vertices[static_cast<std::size_t>(i)]) == lambda) return i;
  return -1;
}

TildeRootSystem Geometry::tilde_root_system() const {
  if (phiL_pos_.empty()) throw std::invalid_argument("Phi^L is empty");
  const auto& R = G_->roots();
  TildeRootSystem T;
  for (int a : phiL_pos_) {
    std::int64_t b = 1;
    while (!positive({a, b})) ++b;
    T.positive.push_back(R.positive[a] / Q(b));
    T.source.push_back(a);
    T.b.push_back(b);
  }
  return T;
}

void Geometry::build_quarters() {
  const auto& S = G_->sys();
  const auto& R = S.R;
  std::vector<QVec> simple;
  for (int a : simple_L_) simple.push_back(R.positive[a]);
  auto v0 = solve_pairings(R, simple, std::vector<Q>(simple.size(), Q(1)));
  if (!v0) throw std::logic_error("simple system of Phi^L is not a basis");

  std::vector<QMat> group{QMat::Identity(R.dim, R.dim)};
  std::set<std::vector<std::int64_t>> seen{qkey(*v0)};
  for (std::size_t k = 0; k < group.size(); ++k)
    for (int a : simple_L_) {
      QMat M = S.reflection({a, 0}).M * group[k];
      if (seen.insert(qkey(M * *v0)).second) group.push_back(M);
    }

  for (std::size_t id = 0; id < group.size(); ++id) {
    Quarter q;
    q.id = static_cast<int>(id);
    q.sigma = group[id];
    std::vector<QVec> rows, images;
    std::vector<Q> rhs;
    for (int a : simple_L_) {
      QVec img = q.sigma * R.positive[a];
      images.push_back(img);
      int idx = R.find(img);
      bool neg = idx < -1;
      int beta = neg ? -(idx + 2) : idx;
      q.beta.push_back(beta);
      q.negative.push_back(neg);
      q.b.push_back(neg ? 0 : base_strip(beta).second);
      rows.push_back(R.positive[beta]);
      rhs.push_back(Q(q.b.back()));
    }
    auto lam = solve_pairings(R, rows, rhs);
    if (!lam) throw std::logic_error("quarter vertex is not determined");
    q.lambda = *lam;

    // Step off the vertex into the quarter and walk to that alcove.
    std::optional<GroupElement> x;
    for (int attempt = 1; attempt < 50 && !x; ++attempt) {
      std::vector<Q> c;
      for (std::size_t i = 0; i < images.size(); ++i) c.push_back(Q(1) + Q(static_cast<std::int64_t>((i + 1) * attempt), 97));
      auto d = solve_pairings(R, images, c);
      QVec p = q.lambda + *d * Q(1, 1000);
      try {
        x = alcove_at(p);
      } catch (const std::invalid_argument&) {
      }
    }
    if (!x) throw std::logic_error("no generic point found near a quarter vertex");
    q.lambda_type = vertex_type(*x, q.lambda);
    if (q.lambda_type < 0) throw std::logic_error("quarter vertex is not a vertex of the adjacent alcove");
    q.S_lambda = complement_of(S.num_gens(), {q.lambda_type});
    q.b_sigma = strip_left(*G_, *x, q.S_lambda).second;
    quarters_.push_back(std::move(q));
  }
}

bool Geometry::in_quarter(const Quarter& q, const GroupElement& x) const {
  for (std::size_t i = 0; i < q.beta.size(); ++i) {
    std::int64_t f = x.shi[static_cast<std::size_t>(q.beta[i])];
    if (q.negative[i] ? f >= q.b[i] : f < q.b[i]) return false;
  }
  return true;
}

int Geometry::quarter_of(const GroupElement& x) const {
  for (const auto& q : quarters_)
    if (in_quarter(q, x)) return q.id;
  return -1;
}

int Geometry::chamber_of(const GroupElement& x) const {
  for (const auto& q : quarters_) {
    bool ok = true;
    for (std::size_t i = 0; i < q.beta.size() && ok; ++i) {
      std::int64_t f = x.shi[static_cast<std::size_t>(q.beta[i])];
      ok = q.negative[i] ? f < 0 : f >= 0;
    }
    if (ok) return q.id;
  }
  return -1;
}

SemidirectFactor Geometry::semidirect_factor(const GroupElement& w) const {
  if (static_cast<int>(S_circ_.size()) == G_->num_gens()) throw std::invalid_argument("S° must be proper");
  const auto e = G_->identity();
  GroupElement cur = w;
  std::vector<int> letters;
  int len = count_L(e, cur);
  while (len > 0) {
    bool moved = false;
    for (std::size_t k = 0; k < tilde_gens_.size(); ++k) {
      GroupElement y = G_->multiply(tilde_gens_[k], cur);
      int ly = count_L(e, y);
      if (ly < len) {
        cur = y;
        len = ly;
        letters.push_back(static_cast<int>(k));
        moved = true;
        break;
      }
    }
    if (!moved) throw std::logic_error("no descent among the conjugated generators");
  }
  // w = s~_1 ... s~_k cur, hence w = cur (cur^-1 s~_1 cur) ... (cur^-1 s~_k cur).
  SemidirectFactor f;
  f.w_circ = cur;
  f.w_tilde = G_->multiply(G_->invert(cur), w);
  GroupElement ci = G_->invert(cur);
  for (int k : letters) {
    auto c = G_->multiply(G_->multiply(ci, tilde_gens_[static_cast<std::size_t>(k)]), cur);
    int idx = -1;
    for (std::size_t j = 0; j < tilde_gens_.size(); ++j)
      if (tilde_gens_[j] == c) idx = static_cast<int>(j);
    if (idx < 0) throw std::logic_error("conjugated generator left the generating set");
    f.tilde_word.push_back(idx);
  }
  return f;
}

std::pair<double, double> plane_coords(const CoxeterGroup& G, const QVec& p) {
  auto d = [](const Q& x) { return boost::rational_cast<double>(x); };
  const auto& R = G.roots();
  if (R.dim == 2) {
    if (R.family == Family::C) return {d(p(0) - p(1)), d(p(0) + p(1))};
    return {d(p(0)), d(p(1))};
  }
  if (R.dim == 3) return {(d(p(0)) - d(p(1))) / std::sqrt(2.0), (d(p(0)) + d(p(1)) - 2 * d(p(2))) / std::sqrt(6.0)};
  throw std::invalid_argument("only rank-2 arrangements can be drawn");
}

std::vector<GroupElement> alcoves_in_window(const CoxeterGroup& G, double window) {
  const auto& S = G.sys();
  auto near = [&](const GroupElement& x) {
    auto [X, Y] = plane_coords(G, x.center(S));
    return std::abs(X) <= window + 1 && std::abs(Y) <= window + 1;
  };
  std::vector<GroupElement> out;
  std::set<std::vector<std::int64_t>> seen;
  std::deque<GroupElement> q{G.identity()};
  seen.insert(q.front().shi);
  while (!q.empty()) {
    GroupElement x = q.front();
    q.pop_front();
    out.push_back(x);
    for (int s = 0; s < S.num_gens(); ++s) {
      GroupElement y = G.apply_generator(s, x);
      if (seen.insert(y.shi).second && near(y)) q.push_back(y);
    }
  }
  return out;
}

std::string render_svg(const CoxeterGroup& G, const std::vector<std::pair<GroupElement, int>>& filled,
                       const std::vector<GroupElement>& starred, const SvgOptions& opt) {
  static const char* palette[] = {"#9e9e9e", "#c6dbef", "#fdd0a2", "#c7e9c0", "#dadaeb", "#fcbba1",
                                  "#d9d9d9", "#fee391", "#a1d99b", "#9ecae1", "#bcbddc", "#fdae6b"};
  const auto& S = G.sys();
  std::map<std::vector<std::int64_t>, int> fill;
  for (const auto& [x, c] : filled) fill[x.shi] = c;
  std::set<std::vector<std::int64_t>> stars;
  for (const auto& x : starred) stars.insert(x.shi);

  double W = opt.window, k = opt.scale, size = 2 * W * k;
  auto px = [&](double X) { return (X + W) * k; };
  auto py = [&](double Y) { return (W - Y) * k; };
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto alcoves = alcoves_in_window(G, W);
  const auto e = G.identity();
  for (const auto& x : alcoves) {
    std::string colour = "none";
    auto it = fill.find(x.shi);
    if (it != fill.end() && it->second >= 0) colour = palette[it->second % 12];
    if (x == e) colour = "black";
    os << "<polygon points=\"";
    for (const auto& v : S.a0_vertices) {
      auto [X, Y] = plane_coords(G, x.g(v));
      os << px(X) << "," << py(Y) << " ";
    }
    os << "\" fill=\"" << colour << "\" stroke=\"#555\" stroke-width=\"0.5\"/>\n";
    if (stars.count(x.shi)) {
      auto [X, Y] = plane_coords(G, x.center(S));
      os << "<text x=\"" << px(X) << "\" y=\"" << py(Y) + 4 << "\" font-size=\"12\" text-anchor=\"middle\">*</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace ac
