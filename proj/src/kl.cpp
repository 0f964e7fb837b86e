#include "ac/kl.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace ac {

void add_to(HeckeElt& h, int w, const Laurent& a) {
  if (a.is_zero()) return;
  auto it = h.find(w);
  if (it == h.end()) {
    h.emplace(w, a);
    return;
  }
  it->second += a;
  if (it->second.is_zero()) h.erase(it);
}

HeckeElt scale(const HeckeElt& h, const Laurent& a) {
  HeckeElt r;
  if (a.is_zero()) return r;
  for (const auto& [w, c] : h) add_to(r, w, c * a);
  return r;
}

HeckeElt operator+(const HeckeElt& a, const HeckeElt& b) {
  HeckeElt r = a;
  for (const auto& [w, c] : b) add_to(r, w, c);
  return r;
}

HeckeElt operator-(const HeckeElt& a, const HeckeElt& b) {
  HeckeElt r = a;
  for (const auto& [w, c] : b) add_to(r, w, -c);
  return r;
}

Hecke::Hecke(const Ball& X, WeightFunction L) : X_(&X), L_(std::move(L)) {
  const auto& S = X.group().sys();
  int k = S.num_gens();
  for (int s = 0; s < k; ++s) {
    const Gamma& g = L_[S.class_of[s]];
    zero_.push_back(L_.group->sign(g) == 0);
    vs_.push_back(Laurent::monomial(order(), g));
    vs_inv_.push_back(Laurent::monomial(order(), -g));
    vdiff_.push_back(vs_.back() - vs_inv_.back());
  }
  bar_memo_.resize(static_cast<std::size_t>(X.size()));
}

HeckeElt Hecke::C_s(int s) const {
  int i = X_->lmul(s, 0);
  HeckeElt h = T(i);
  if (!zero_weight(s)) add_to(h, 0, v_inv(s));
  return h;
}

HeckeElt Hecke::ts_times(int s, const HeckeElt& h) const {
  HeckeElt r;
  const Laurent& d = vdiff_[static_cast<std::size_t>(s)];
  for (const auto& [y, c] : h) {
    int sy = X_->lmul(s, y);
    if (sy < 0) throw BallTruncation("T_s·T_y leaves the ball at " + X_->str(y));
    add_to(r, sy, c);
    if (X_->length(sy) < X_->length(y) && !d.is_zero()) add_to(r, y, c * d);
  }
  return r;
}

HeckeElt Hecke::tx_times(int x, const HeckeElt& h) const {
  HeckeElt r = h;
  const auto& w = X_->word(x);
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = ts_times(*it, r);
  return r;
}

HeckeElt Hecke::multiply(const HeckeElt& a, const HeckeElt& b) const {
  HeckeElt r;
  for (const auto& [x, c] : a) r = r + scale(tx_times(x, b), c);
  return r;
}

const HeckeElt& Hecke::bar_T(int w) const {
  auto& slot = bar_memo_[static_cast<std::size_t>(w)];
  if (slot) return *slot;
  if (w == 0) {
    slot = T(0);
    return *slot;
  }
  // bar(T_w) = T_s^{-1} bar(T_{sw}), T_s^{-1} = T_s - (v_s - v_s^{-1}).
  int s = X_->word(w).front();
  const HeckeElt& rest = bar_T(X_->lmul(s, w));
  HeckeElt r = ts_times(s, rest) - scale(rest, v_diff(s));
  slot = std::move(r);
  return *slot;
}

HeckeElt Hecke::bar(const HeckeElt& h) const {
  HeckeElt r;
  for (const auto& [w, c] : h) r = r + scale(bar_T(w), c.bar());
  return r;
}

KLTable::KLTable(const Ball& X, WeightFunction L) : KLTable(X, std::move(L), true) {}

KLTable::KLTable(const Ball& X, WeightFunction L, bool do_fill) : H_(X, std::move(L)) {
  C_.resize(static_cast<std::size_t>(X.size()));
  M_.assign(static_cast<std::size_t>(X.size()), std::vector<HeckeElt>(static_cast<std::size_t>(X.group().num_gens())));
  if (do_fill) fill();
}

void KLTable::fill() {
  const Ball& X = ball();
  int k = X.group().num_gens();
  X.ensure_bruhat();
  for (int w = 0; w < X.size(); ++w) {
    if (w == 0) {
      C_[0] = H_.T(0);
    } else {
      // Prefer a descent of positive weight: C_w = C_s C_{sw} - sum M^s_{z,sw} C_z.
      int s = -1;
      for (int t = 0; t < k; ++t)
        if (X.left_descent(t, w) && (s < 0 || (H_.zero_weight(s) && !H_.zero_weight(t)))) s = t;
      int w1 = X.lmul(s, w);
      const HeckeElt& c1 = C_[static_cast<std::size_t>(w1)];
      HeckeElt h = H_.ts_times(s, c1);
      if (!H_.zero_weight(s)) {
        h = h + scale(c1, H_.v_inv(s));
        for (const auto& [z, m] : M(s, w1)) h = h - scale(C_[static_cast<std::size_t>(z)], m);
      }
      C_[static_cast<std::size_t>(w)] = std::move(h);
    }
    fill_M(w);
  }
}

void KLTable::fill_M(int w) {
  const Ball& X = ball();
  for (int s = 0; s < X.group().num_gens(); ++s) {
    if (H_.zero_weight(s) || X.left_descent(s, w)) continue;
    HeckeElt& Mw = M_[static_cast<std::size_t>(w)][static_cast<std::size_t>(s)];
    // y < w with sy < y, longest first; r = v_s P_{y,w} - sum_{y<z<w} P_{y,z} M_{z,w}.
    for (int y = w - 1; y >= 0; --y) {
      if (!X.left_descent(s, y) || !X.bruhat_leq(y, w)) continue;
      Laurent r = H_.v(s) * P(y, w);
      for (const auto& [z, m] : Mw) {
        auto it = C_[static_cast<std::size_t>(z)].find(y);
        if (it != C_[static_cast<std::size_t>(z)].end()) r -= it->second * m;
      }
      Laurent mm = r.part_nonneg() + r.part_positive().bar();
      if (!mm.is_zero()) Mw.emplace(y, std::move(mm));
    }
  }
}

Laurent KLTable::P(int y, int w) const {
  const auto& c = C_[static_cast<std::size_t>(w)];
  auto it = c.find(y);
  return it == c.end() ? Laurent(order()) : it->second;
}

Laurent KLTable::Mpoly(int s, int z, int w) const {
  const auto& m = M(s, w);
  auto it = m.find(z);
  return it == m.end() ? Laurent(order()) : it->second;
}

HeckeElt KLTable::cs_times_cw(int s, int w) const {
  const Ball& X = ball();
  int sw = X.lmul(s, w);
  bool down = sw >= 0 && X.length(sw) < X.length(w);
  HeckeElt r;
  if (H_.zero_weight(s)) {
    if (sw < 0) throw BallTruncation("sw leaves the ball at " + X.str(w));
    r.emplace(sw, H_.one());
    return r;
  }
  if (down) {
    r.emplace(w, H_.v(s) + H_.v_inv(s));
    return r;
  }
  if (sw < 0) throw BallTruncation("sw leaves the ball at " + X.str(w));
  r.emplace(sw, H_.one());
  for (const auto& [z, m] : M(s, w)) add_to(r, z, m);
  return r;
}

HeckeElt KLTable::to_T(const HeckeElt& c) const {
  HeckeElt r;
  for (const auto& [w, a] : c) r = r + scale(C(w), a);
  return r;
}

KLTable KLTable::specialized(const KLTable& T, const Specialization& theta, const WeightFunction& target) {
  KLTable R(T.ball(), target, false);
  auto push = [&](const HeckeElt& h) {
    HeckeElt r;
    for (const auto& [w, a] : h) add_to(r, w, theta(a));
    return r;
  };
  for (int w = 0; w < T.size(); ++w) {
    R.C_[static_cast<std::size_t>(w)] = push(T.C(w));
    for (std::size_t s = 0; s < R.M_[static_cast<std::size_t>(w)].size(); ++s)
      if (!R.H_.zero_weight(static_cast<int>(s))) R.M_[static_cast<std::size_t>(w)][s] = push(T.M(static_cast<int>(s), w));
  }
  return R;
}

namespace {

nlohmann::json hecke_json(const HeckeElt& h) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [w, a] : h) {
    nlohmann::json t;
    ac::to_json(t, a);
    j.push_back({w, t});
  }
  return j;
}

HeckeElt hecke_from_json(const nlohmann::json& j, const OrderedGroup* g) {
  HeckeElt h;
  for (const auto& t : j) add_to(h, t.at(0).get<int>(), laurent_from_json(t.at(1), g));
  return h;
}

}  // namespace

nlohmann::json KLTable::to_json() const {
  nlohmann::json j;
  j["key"] = table_key(*this);
  j["size"] = size();
  nlohmann::json words = nlohmann::json::array();
  for (int i = 0; i < size(); ++i) words.push_back(ball().str(i));
  j["words"] = words;
  nlohmann::json C = nlohmann::json::array(), M = nlohmann::json::array();
  for (int w = 0; w < size(); ++w) {
    C.push_back(hecke_json(C_[static_cast<std::size_t>(w)]));
    nlohmann::json mw = nlohmann::json::array();
    for (const auto& m : M_[static_cast<std::size_t>(w)]) mw.push_back(hecke_json(m));
    M.push_back(mw);
  }
  j["C"] = C;
  j["M"] = M;
  return j;
}

std::optional<KLTable> KLTable::from_json(const Ball& X, const WeightFunction& L, const nlohmann::json& j,
                                          std::string* why) {
  auto reject = [&](const std::string& msg) -> std::optional<KLTable> {
    if (why) *why = msg;
    return std::nullopt;
  };
  try {
    if (j.at("size").get<int>() != X.size()) return reject("ball size differs");
    const auto& words = j.at("words");
    for (int i = 0; i < X.size(); ++i)
      if (words.at(static_cast<std::size_t>(i)).get<std::string>() != X.str(i)) return reject("element order differs");
    KLTable T(X, L, false);
    if (j.at("key").get<std::string>() != table_key(T)) return reject("key differs");
    const OrderedGroup* g = T.order();
    int k = X.group().num_gens();
    for (int w = 0; w < X.size(); ++w) {
      T.C_[static_cast<std::size_t>(w)] = hecke_from_json(j.at("C").at(static_cast<std::size_t>(w)), g);
      for (int s = 0; s < k; ++s)
        T.M_[static_cast<std::size_t>(w)][static_cast<std::size_t>(s)] =
            hecke_from_json(j.at("M").at(static_cast<std::size_t>(w)).at(static_cast<std::size_t>(s)), g);
    }
    X.ensure_bruhat();
    for (int w = 0; w < X.size(); ++w) {
      const auto& c = T.C(w);
      auto it = c.find(w);
      if (it == c.end() || it->second != T.H_.one()) return reject("P_{w,w} != 1 at " + X.str(w));
      for (const auto& [y, p] : c) {
        if (y == w) continue;
        if (!X.bruhat_leq(y, w)) return reject("P_{y,w} != 0 for y not below w");
        if (!p.is_strictly_negative()) return reject("P_{y,w} not in A_<0");
      }
      for (int s = 0; s < k; ++s)
        for (const auto& [z, m] : T.M(s, w))
          if (!m.is_bar_invariant()) return reject("M not bar-invariant");
    }
    return T;
  } catch (const std::exception& e) {
    return reject(std::string("malformed table: ") + e.what());
  }
}

void KLInvariantReport::fail(std::string msg) {
  ok = false;
  if (failures.size() < 20) failures.push_back(std::move(msg));
}

KLInvariantReport check_kl_invariants(const KLTable& T) {
  KLInvariantReport rep;
  const Ball& X = T.ball();
  const Hecke& H = T.hecke();
  const OrderedGroup& ord = *T.order();
  int k = X.group().num_gens();
  for (int w = 0; w < X.size(); ++w) {
    const auto& c = T.C(w);
    ++rep.checks;
    if (H.bar(c) != c) rep.fail("bar(C_w) != C_w at " + X.str(w));
    if (T.P(w, w) != H.one()) rep.fail("P_{w,w} != 1 at " + X.str(w));
    for (const auto& [y, p] : c) {
      if (y == w) continue;
      ++rep.checks;
      if (!p.is_strictly_negative()) rep.fail("P not in A_<0: " + X.str(y) + " < " + X.str(w));
      if (!X.bruhat_leq(y, w)) rep.fail("support outside the Bruhat ideal at " + X.str(w));
    }
    for (int s = 0; s < k; ++s) {
      if (!X.left_descent(s, w) || H.zero_weight(s)) continue;
      // sy > y, sw < w: P_{y,w} = v_s^{-1} P_{sy,w}.
      for (int y = 0; y < w; ++y) {
        int sy = X.lmul(s, y);
        if (sy < 0 || X.length(sy) < X.length(y)) continue;
        ++rep.checks;
        if (T.P(y, w) != H.v_inv(s) * T.P(sy, w))
          rep.fail("P_{y,w} != v_s^-1 P_{sy,w} at " + X.str(y) + ", " + X.str(w));
      }
    }
    for (int s = 0; s < k; ++s) {
      const Gamma& Ls = T.weights()[X.group().sys().class_of[s]];
      for (const auto& [z, m] : T.M(s, w)) {
        ++rep.checks;
        if (!m.is_bar_invariant()) rep.fail("M not bar-invariant");
        auto d = m.deg();
        if (d && ord.compare(*d, Ls) >= 0) rep.fail("deg M >= L(s) at " + X.str(z) + ", " + X.str(w));
      }
    }
  }
  return rep;
}

std::string table_key(const Ball& X, const WeightFunction& L) {
  std::ostringstream os;
  os << X.group().sys().label << "|" << L.group->str() << "|" << L.str() << "|N=" << X.radius();
  return os.str();
}

std::string table_key(const KLTable& T) { return table_key(T.ball(), T.weights()); }

KLTable cached_table(const Ball& X, const WeightFunction& L, const std::string& dir, bool* loaded) {
  if (loaded) *loaded = false;
  if (dir.empty()) return KLTable(X, L);
  namespace fs = std::filesystem;
  std::string key = table_key(X, L);
  std::ostringstream name;
  name << "kl-" << std::hex << std::hash<std::string>{}(key) << ".json";
  fs::path path = fs::path(dir) / name.str();
  if (fs::exists(path)) {
    std::ifstream in(path);
    nlohmann::json j;
    try {
      in >> j;
      if (auto T = KLTable::from_json(X, L, j)) {
        if (loaded) *loaded = true;
        return std::move(*T);
      }
    } catch (const std::exception&) {
    }
  }
  KLTable T(X, L);
  fs::create_directories(dir);
  std::ofstream out(path);
  out << T.to_json().dump();
  return T;
}

CellPartition cell_preorder(const KLTable& T, Flavor flavor) {
  const Ball& X = T.ball();
  const Hecke& H = T.hecke();
  int n = X.size(), k = X.group().num_gens();
  CellPartition cp;
  cp.flavor = flavor;
  cp.N = X.radius();
  std::vector<std::set<int>> left(static_cast<std::size_t>(n));
  long step = 0, mu = 0, trunc = 0;
  for (int w = 0; w < n; ++w) {
    auto& E = left[static_cast<std::size_t>(w)];
    for (int s = 0; s < k; ++s) {
      int sw = X.lmul(s, w);
      bool down = sw >= 0 && X.length(sw) < X.length(w);
      if (down && !H.zero_weight(s)) continue;  // (v_s + v_s^{-1}) C_w
      if (sw < 0) {
        ++trunc;
      } else if (E.insert(sw).second) {
        ++step;
      }
      if (!H.zero_weight(s))
        for (const auto& [z, m] : T.M(s, w))
          if (E.insert(z).second) ++mu;
    }
  }
  cp.step_edges = step;
  cp.mu_edges = mu;
  cp.truncated_edges = trunc;
  std::vector<std::set<int>> E(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) {
    if (flavor != Flavor::Right)
      for (int y : left[static_cast<std::size_t>(w)]) E[static_cast<std::size_t>(w)].insert(y);
    if (flavor != Flavor::Left)
      for (int y : left[static_cast<std::size_t>(X.inverse(w))]) E[static_cast<std::size_t>(w)].insert(X.inverse(y));
  }
  cp.edges.resize(static_cast<std::size_t>(n));
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  Graph g(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w)
    for (int y : E[static_cast<std::size_t>(w)]) {
      cp.edges[static_cast<std::size_t>(w)].push_back(y);
      if (y != w) boost::add_edge(static_cast<std::size_t>(w), static_cast<std::size_t>(y), g);
    }
  std::vector<int> comp(static_cast<std::size_t>(n));
  boost::strong_components(g, boost::make_iterator_property_map(comp.begin(), boost::get(boost::vertex_index, g)));
  // Renumber classes by their smallest member.
  std::map<int, int> renum;
  cp.cls.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = renum.emplace(comp[static_cast<std::size_t>(i)], static_cast<int>(renum.size()));
    cp.cls[static_cast<std::size_t>(i)] = it->second;
    if (fresh) cp.classes.emplace_back();
    cp.classes[static_cast<std::size_t>(it->second)].push_back(i);
  }
  std::vector<std::set<int>> below(cp.classes.size());
  for (int w = 0; w < n; ++w)
    for (int y : E[static_cast<std::size_t>(w)]) {
      int a = cp.cls[static_cast<std::size_t>(w)], b = cp.cls[static_cast<std::size_t>(y)];
      if (a != b) below[static_cast<std::size_t>(a)].insert(b);
    }
  for (const auto& b : below) cp.below.emplace_back(b.begin(), b.end());
  return cp;
}

Gamma c_bound(const CoxeterGroup& G, const WeightFunction& L, const GroupElement& x, const GroupElement& y) {
  const OrderedGroup& ord = *L.group;
  auto h1 = G.separating(G.identity(), y);
  auto h2 = G.separating(y, G.multiply(x, y));
  std::sort(h1.begin(), h1.end());
  std::sort(h2.begin(), h2.end());
  std::vector<Hyperplane> common;
  std::set_intersection(h1.begin(), h1.end(), h2.begin(), h2.end(), std::back_inserter(common));
  std::map<int, Gamma> best;
  for (const auto& h : common) {
    Gamma w = G.hyperplane_weight(L, h);
    auto it = best.find(h.alpha);
    if (it == best.end() || ord.less(it->second, w)) best[h.alpha] = w;
  }
  Gamma c = ord.zero();
  for (const auto& [a, w] : best) c = c + w;
  return ord.canonical(c);
}

void CheckReport::fail(std::string msg) {
  ok = false;
  if (failures.size() < 20) failures.push_back(std::move(msg));
}

nlohmann::json CheckReport::to_json() const {
  return {{"ok", ok}, {"checked", checked}, {"skipped", skipped}, {"failures", failures}};
}

CheckReport verify_degree_bounds(const Hecke& H, int radius) {
  CheckReport rep;
  const Ball& X = H.ball();
  const auto& G = X.group();
  const OrderedGroup& ord = *H.order();
  int n = X.layer_begin(std::min(radius, X.radius()) + 1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (X.length(x) + X.length(y) > X.radius()) {
        ++rep.skipped;
        continue;
      }
      Gamma c = c_bound(G, H.weights(), X[x], X[y]);
      for (const auto& [z, f] : H.structure_constants(x, y)) {
        ++rep.checked;
        auto d = f.deg();
        if (d && ord.less(c, *d))
          rep.fail("deg f > c for x=" + X.str(x) + " y=" + X.str(y) + " z=" + X.str(z));
      }
    }
  return rep;
}

std::vector<int> s_circ_of(const KLTable& T) {
  const auto& S = T.ball().group().sys();
  const auto& plus = T.order()->plus();
  std::vector<int> out;
  for (int s = 0; s < S.num_gens(); ++s) {
    int c = S.class_of[s];
    bool is_plus = plus.empty() ? !T.weights().is_zero_on(c) : plus[static_cast<std::size_t>(c)];
    if (!is_plus) out.push_back(s);
  }
  return out;
}

CheckReport verify_klasym(const KLTable& T, const std::vector<int>& I) {
  CheckReport rep;
  const Ball& X = T.ball();
  const auto& G = X.group();
  const OrderedGroup& ord = *T.order();
  const WeightFunction& L = T.weights();
  auto Sc = s_circ_of(T);
  std::vector<int> I0;
  for (int s : I)
    if (std::find(Sc.begin(), Sc.end(), s) != Sc.end()) I0.push_back(s);
  auto P = parabolic(G, I);
  if (!P.finite) throw std::invalid_argument("W_I must be finite");
  GroupElement wc = strip_left(G, P.longest, I0).second;
  Gamma Lwc = ord.project_plus(G.weight_of(L, wc));
  std::vector<CosetDecomposition> dec;
  std::vector<Gamma> Lu;
  for (int i = 0; i < X.size(); ++i) {
    dec.push_back(coset_decompose(G, X[i], I, I0));
    Lu.push_back(ord.project_plus(G.weight_of(L, dec.back().u)));
  }
  for (int y = 0; y < X.size(); ++y) {
    if (dec[static_cast<std::size_t>(y)].u != wc) continue;
    for (const auto& [x, p] : T.C(y)) {
      if (x == y) continue;
      ++rep.checked;
      auto d = p.deg();
      Gamma bound = ord.canonical(Lu[static_cast<std::size_t>(x)] - Lwc);
      if (d && ord.less(bound, ord.project_plus(*d)))
        rep.fail("deg+ P_{x,y} too large: x=" + X.str(x) + " y=" + X.str(y));
    }
    for (int s : Sc)
      for (const auto& [x, m] : T.M(s, y)) {
        ++rep.checked;
        if (dec[static_cast<std::size_t>(x)].u != wc)
          rep.fail("M^s_{x,y} != 0 with u_x != w°_I: x=" + X.str(x) + " y=" + X.str(y));
      }
  }
  return rep;
}

WeightFunction plus_part(const WeightFunction& L) {
  WeightFunction r = L;
  for (auto& v : r.values) v = L.group->project_plus(v);
  return r;
}

InductionData::InductionData(const KLTable& T, const Geometry& plus) : T_(&T), geo_(&plus), C_(plus) {
  const Ball& X = T.ball();
  for (int i = 0; i < X.size(); ++i) {
    int q = C_.in_cmin(X[i]) ? geo_->quarter_of(X[i]) : -1;
    sigma_.push_back(q);
    in_U_.push_back(q >= 0 && C_.decompose(X[i]).x == X.group().identity());
  }
}

bool InductionData::b_leq(int sigma2, int sigma, bool strict) const {
  const auto& Q = geo_->quarters();
  const auto& b2 = Q[static_cast<std::size_t>(sigma2)].b_sigma;
  const auto& b = Q[static_cast<std::size_t>(sigma)].b_sigma;
  if (strict && b2 == b) return false;
  return geo_->group().bruhat_leq(b2, b);
}

bool InductionData::in_N_leq(int i, int sigma) const {
  int q = sigma_of(i);
  return q >= 0 && b_leq(q, sigma);
}

bool InductionData::in_X(int x, int sigma) const {
  const auto& q = geo_->quarters()[static_cast<std::size_t>(sigma)];
  for (int s : q.S_lambda)
    if (T_->ball().right_descent(x, s)) return false;
  return true;
}

namespace {

// Terms of h surviving modulo H_{<0}.
HeckeElt mod_negative(const HeckeElt& h) {
  HeckeElt r;
  for (const auto& [w, a] : h) add_to(r, w, a.part_nonneg());
  return r;
}

}  // namespace

CheckReport verify_tx_cw(const InductionData& D) {
  CheckReport rep;
  const KLTable& T = D.table();
  const Ball& X = T.ball();
  const Hecke& H = T.hecke();
  for (int w = 0; w < X.size(); ++w) {
    if (!D.in_U(w)) continue;
    int sigma = D.sigma_of(w);
    for (int x = 0; x < X.size(); ++x) {
      if (!D.in_X(x, sigma)) continue;
      if (X.length(x) + X.length(w) > X.radius()) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      int xw = X.mul(x, w);
      HeckeElt r = mod_negative(H.tx_times(x, T.C(w)));
      auto it = r.find(xw);
      if (xw < 0 || it == r.end() || it->second != H.one()) {
        rep.fail("coefficient of T_xw is not 1: x=" + X.str(x) + " w=" + X.str(w));
        continue;
      }
      for (const auto& [z, a] : r) {
        if (z == xw) continue;
        int q = D.sigma_of(z);
        if (q < 0 || !D.b_leq(q, sigma, true) || X.length(z) >= X.length(xw))
          rep.fail("T_" + X.str(z) + " survives in T_x C_w: x=" + X.str(x) + " w=" + X.str(w));
      }
    }
  }
  return rep;
}

nlohmann::json InductionReport::to_json() const {
  return {{"sigma", sigma},         {"ok", ok()},          {"I1", I1.to_json()},
          {"I2", I2.to_json()},     {"I3", I3.to_json()},  {"I5", I5.to_json()},
          {"left_ideal", left_ideal.to_json()}, {"geometry", geometry.to_json()}};
}

InductionReport check_induction_conditions(const InductionData& D, int sigma, const CellPartition& left) {
  InductionReport rep;
  rep.sigma = sigma;
  const KLTable& T = D.table();
  const Ball& X = T.ball();
  const Hecke& H = T.hecke();
  std::vector<int> U;
  for (int u = 0; u < X.size(); ++u)
    if (D.in_U(u) && D.b_leq(D.sigma_of(u), sigma)) U.push_back(u);

  std::map<int, int> hit;  // xu -> u
  std::vector<bool> generated(static_cast<std::size_t>(X.size()), false);
  for (int u : U) {
    int su = D.sigma_of(u);
    ++rep.I1.checked;
    if (!D.in_X(0, su)) rep.I1.fail("e not in X_u for u=" + X.str(u));
    for (int x = 0; x < X.size(); ++x) {
      if (!D.in_X(x, su)) continue;
      if (X.length(x) + X.length(u) > X.radius()) {
        ++rep.I2.skipped;
        continue;
      }
      ++rep.I2.checked;
      int xu = X.mul(x, u);
      if (xu < 0 || X.length(xu) != X.length(x) + X.length(u)) {
        rep.I2.fail("l(xu) != l(x) + l(u): x=" + X.str(x) + " u=" + X.str(u));
        continue;
      }
      ++rep.I3.checked;
      auto [it, fresh] = hit.emplace(xu, u);
      if (!fresh) rep.I3.fail(X.str(xu) + " lies in X_u u for two u");
      generated[static_cast<std::size_t>(xu)] = true;

      // I5: T_x C_u = T_xu + lower terms of N_sigma^<= modulo H_{<0}.
      ++rep.I5.checked;
      HeckeElt r = mod_negative(H.tx_times(x, T.C(u)));
      auto c = r.find(xu);
      if (c == r.end() || c->second != H.one()) rep.I5.fail("coefficient of T_xu is not 1 at " + X.str(xu));
      for (const auto& [z, a] : r)
        if (z != xu && (!D.in_N_leq(z, sigma) || X.length(z) >= X.length(xu)))
          rep.I5.fail("T_" + X.str(z) + " in T_x C_u outside N^<= at " + X.str(xu));
    }
  }
  // N_sigma^<= by quarters agrees with {xu} inside the ball.
  for (int i = 0; i < X.size(); ++i) {
    ++rep.geometry.checked;
    if (D.in_N_leq(i, sigma) != generated[static_cast<std::size_t>(i)])
      rep.geometry.fail("N^<= by quarters and by products differ at " + X.str(i));
  }
  for (int w = 0; w < X.size(); ++w) {
    if (!D.in_N_leq(w, sigma)) continue;
    for (int y : left.edges[static_cast<std::size_t>(w)]) {
      ++rep.left_ideal.checked;
      if (!D.in_N_leq(y, sigma)) rep.left_ideal.fail(X.str(y) + " <=_L " + X.str(w) + " leaves N^<=");
    }
  }
  return rep;
}

}  // namespace ac
