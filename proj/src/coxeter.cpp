#include "ac/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace ac {

std::size_t ShiHash::operator()(const std::vector<std::int64_t>& v) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
  return h;
}

CoxeterGroup::CoxeterGroup(AffineSystem S) : S_(std::move(S)) {}

GroupElement CoxeterGroup::make(const Affine& g) const {
  GroupElement x{g, {}};
  QVec p = g(S_.a0_center);
  x.shi.reserve(S_.R.positive.size());
  for (const auto& a : S_.R.positive) x.shi.push_back(floor_q(dot(p, a)));
  return x;
}

GroupElement CoxeterGroup::identity() const { return make(Affine::identity(S_.R.dim)); }

GroupElement CoxeterGroup::multiply(const GroupElement& x, const GroupElement& y) const {
  return make(y.g.after(x.g));
}

GroupElement CoxeterGroup::invert(const GroupElement& x) const { return make(x.g.inverse()); }

GroupElement CoxeterGroup::apply_generator(int s, const GroupElement& x) const {
  return make(x.g.after(S_.reflections[s]));
}

GroupElement CoxeterGroup::times_generator(const GroupElement& x, int s) const {
  return make(S_.reflections[s].after(x.g));
}

GroupElement CoxeterGroup::from_word(const std::vector<int>& word) const {
  GroupElement x = identity();
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = apply_generator(*it, x);
  return x;
}

int CoxeterGroup::length(const GroupElement& x) const {
  std::int64_t l = 0;
  for (auto f : x.shi) l += f >= 0 ? f : -f;
  return static_cast<int>(l);
}

std::vector<Hyperplane> CoxeterGroup::separating(const GroupElement& a, const GroupElement& b) const {
  std::vector<Hyperplane> out;
  for (std::size_t i = 0; i < a.shi.size(); ++i) {
    auto [lo, hi] = crossing(a.shi[i], b.shi[i]);
    for (std::int64_t n = lo; n <= hi; ++n) out.push_back({static_cast<int>(i), n});
  }
  return out;
}

std::vector<Hyperplane> CoxeterGroup::separating_from_base(const GroupElement& x) const {
  return separating(identity(), x);
}

bool CoxeterGroup::separates(const Hyperplane& h, const GroupElement& a, const GroupElement& b) const {
  auto [lo, hi] = crossing(a.shi[h.alpha], b.shi[h.alpha]);
  return lo <= h.n && h.n <= hi;
}

bool CoxeterGroup::is_left_descent(int s, const GroupElement& x) const {
  Hyperplane h = transform(S_.R, x.g, S_.walls[s]);
  auto [lo, hi] = crossing(0, x.shi[h.alpha]);
  return lo <= h.n && h.n <= hi;
}

bool CoxeterGroup::is_right_descent(const GroupElement& x, int s) const {
  const Hyperplane& h = S_.walls[s];
  auto [lo, hi] = crossing(0, x.shi[h.alpha]);
  return lo <= h.n && h.n <= hi;
}

std::vector<int> CoxeterGroup::descents_left(const GroupElement& x) const {
  std::vector<int> d;
  for (int s = 0; s < num_gens(); ++s)
    if (is_left_descent(s, x)) d.push_back(s);
  return d;
}

std::vector<int> CoxeterGroup::descents_right(const GroupElement& x) const {
  std::vector<int> d;
  for (int s = 0; s < num_gens(); ++s)
    if (is_right_descent(x, s)) d.push_back(s);
  return d;
}

std::vector<int> CoxeterGroup::reduced_word(const GroupElement& x) const {
  std::vector<int> w;
  GroupElement cur = x;
  while (true) {
    int found = -1;
    for (int s = 0; s < num_gens(); ++s)
      if (is_left_descent(s, cur)) {
        found = s;
        break;
      }
    if (found < 0) break;
    w.push_back(found);
    cur = apply_generator(found, cur);
  }
  return w;
}

bool CoxeterGroup::bruhat_leq(const GroupElement& x, const GroupElement& y) const {
  int lx = length(x), ly = length(y);
  if (lx > ly) return false;
  if (lx == 0) return true;
  if (lx == ly) return x == y;
  for (int s = 0; s < num_gens(); ++s) {
    if (!is_left_descent(s, y)) continue;
    GroupElement sy = apply_generator(s, y);
    if (is_left_descent(s, x)) return bruhat_leq(apply_generator(s, x), sy);
    return bruhat_leq(x, sy);
  }
  return false;
}

std::string CoxeterGroup::word_string(const std::vector<int>& word) const {
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += ".";
    s += S_.gen_names[word[i]];
  }
  return s.empty() ? "e" : s;
}

std::optional<std::vector<int>> CoxeterGroup::parse_word(const std::string& text) const {
  std::vector<int> w;
  if (text == "e" || text.empty()) return w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '.' || text[i] == ' ') {
      ++i;
      continue;
    }
    int best = -1;
    std::size_t best_len = 0;
    for (int s = 0; s < num_gens(); ++s) {
      const auto& n = S_.gen_names[s];
      if (text.compare(i, n.size(), n) == 0 && n.size() > best_len) {
        best = s;
        best_len = n.size();
      }
    }
    // Accept the typographic prime as well.
    if (best >= 0 && text.compare(i + best_len, 3, "′") == 0) {
      int primed = S_.gen_index(S_.gen_names[best] + "'");
      if (primed >= 0) {
        best = primed;
        best_len += 3;
        w.push_back(best);
        i += best_len;
        continue;
      }
    }
    if (best < 0) return std::nullopt;
    w.push_back(best);
    i += best_len;
  }
  return w;
}

std::optional<GroupElement> CoxeterGroup::parse(const std::string& text) const {
  auto w = parse_word(text);
  if (!w) return std::nullopt;
  return from_word(*w);
}

Gamma CoxeterGroup::weight_of_word(const WeightFunction& L, const std::vector<int>& word) const {
  Gamma s = L.group->zero();
  for (int a : word) s = s + L[S_.class_of[a]];
  return L.group->canonical(s);
}

Gamma CoxeterGroup::weight_of(const WeightFunction& L, const GroupElement& x) const {
  return weight_of_word(L, reduced_word(x));
}

Gamma CoxeterGroup::hyperplane_weight(const WeightFunction& L, const Hyperplane& h) const {
  return L[S_.class_of_hyperplane(h)];
}

Ball::Ball(const CoxeterGroup& G, int N) : G_(&G), N_(N) {
  int k = G.num_gens();
  std::vector<GroupElement> layer{G.identity()};
  std::vector<GroupElement> all;
  std::vector<int> lens;
  std::unordered_map<std::vector<std::int64_t>, int, ShiHash> seen;
  seen[layer[0].shi] = 0;
  for (int d = 0; d <= N; ++d) {
    // Deterministic order inside a layer: by reduced word.
    std::vector<std::pair<std::vector<int>, GroupElement>> tagged;
    for (auto& x : layer) tagged.emplace_back(G.reduced_word(x), x);
    std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    layer_.push_back(static_cast<int>(elems_.size()));
    for (auto& [w, x] : tagged) {
      idx_[x.shi] = static_cast<int>(elems_.size());
      elems_.push_back(x);
      words_.push_back(w);
      len_.push_back(d);
    }
    if (d == N) break;
    std::vector<GroupElement> next;
    for (auto& [w, x] : tagged) {
      for (int s = 0; s < k; ++s) {
        GroupElement y = G.apply_generator(s, x);
        if (seen.emplace(y.shi, 1).second) next.push_back(y);
      }
    }
    layer = std::move(next);
  }
  layer_.push_back(static_cast<int>(elems_.size()));

  lmul_.assign(elems_.size(), std::vector<int>(static_cast<std::size_t>(k), -1));
  rmul_.assign(elems_.size(), std::vector<int>(static_cast<std::size_t>(k), -1));
  inv_.assign(elems_.size(), -1);
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    for (int s = 0; s < k; ++s) {
      lmul_[i][s] = index(G.apply_generator(s, elems_[i]));
      rmul_[i][s] = index(G.times_generator(elems_[i], s));
    }
    inv_[i] = index(G.invert(elems_[i]));
  }
}

int Ball::index(const GroupElement& x) const {
  auto it = idx_.find(x.shi);
  return it == idx_.end() ? -1 : it->second;
}

int Ball::find(const std::string& text) const {
  auto x = G_->parse(text);
  return x ? index(*x) : -1;
}

int Ball::mul(int x, int y) const {
  const auto& w = word(x);
  int cur = y;
  for (auto it = w.rbegin(); it != w.rend() && cur >= 0; ++it) cur = lmul(*it, cur);
  return cur;
}

bool Ball::left_descent(int s, int i) const {
  int j = lmul(s, i);
  return j >= 0 && len_[static_cast<std::size_t>(j)] < len_[static_cast<std::size_t>(i)];
}

bool Ball::right_descent(int i, int s) const {
  int j = rmul(i, s);
  return j >= 0 && len_[static_cast<std::size_t>(j)] < len_[static_cast<std::size_t>(i)];
}

void Ball::ensure_bruhat() const {
  if (!bruhat_.empty()) return;
  std::size_t n = elems_.size(), words = (n + 63) / 64;
  bruhat_.assign(n, std::vector<std::uint64_t>(words, 0));
  bruhat_[0][0] = 1;
  for (std::size_t w = 1; w < n; ++w) {
    int s = words_[w][0];
    int sw = lmul(s, static_cast<int>(w));
    auto& B = bruhat_[w];
    B = bruhat_[static_cast<std::size_t>(sw)];
    for (std::size_t y = 0; y < n; ++y) {
      if (!(bruhat_[static_cast<std::size_t>(sw)][y / 64] >> (y % 64) & 1)) continue;
      int sy = lmul(s, static_cast<int>(y));
      B[static_cast<std::size_t>(sy) / 64] |= std::uint64_t(1) << (sy % 64);
    }
    B[w / 64] |= std::uint64_t(1) << (w % 64);
  }
}

bool Ball::bruhat_leq(int x, int y) const {
  ensure_bruhat();
  return bruhat_[static_cast<std::size_t>(y)][static_cast<std::size_t>(x) / 64] >> (x % 64) & 1;
}

Parabolic parabolic(const CoxeterGroup& G, std::vector<int> I) {
  std::sort(I.begin(), I.end());
  Parabolic P;
  P.I = I;
  P.finite = static_cast<int>(I.size()) < G.num_gens();
  if (!P.finite) return P;
  std::unordered_map<std::vector<std::int64_t>, int, ShiHash> seen;
  std::deque<GroupElement> q{G.identity()};
  seen[q.front().shi] = 0;
  while (!q.empty()) {
    GroupElement x = q.front();
    q.pop_front();
    P.elements.push_back(x);
    for (int s : I) {
      GroupElement y = G.apply_generator(s, x);
      if (seen.emplace(y.shi, 0).second) q.push_back(y);
    }
  }
  P.longest = *std::max_element(P.elements.begin(), P.elements.end(), [&](const auto& a, const auto& b) {
    return G.length(a) < G.length(b);
  });
  return P;
}

std::pair<GroupElement, GroupElement> strip_left(const CoxeterGroup& G, const GroupElement& x,
                                                 const std::vector<int>& I) {
  std::vector<int> letters;
  GroupElement cur = x;
  bool again = true;
  while (again) {
    again = false;
    for (int s : I)
      if (G.is_left_descent(s, cur)) {
        cur = G.apply_generator(s, cur);
        letters.push_back(s);
        again = true;
        break;
      }
  }
  return {G.from_word(letters), cur};
}

std::pair<GroupElement, GroupElement> strip_right(const CoxeterGroup& G, const GroupElement& x,
                                                  const std::vector<int>& I) {
  std::vector<int> letters;
  GroupElement cur = x;
  bool again = true;
  while (again) {
    again = false;
    for (int s : I)
      if (G.is_right_descent(cur, s)) {
        cur = G.times_generator(cur, s);
        letters.push_back(s);
        again = true;
        break;
      }
  }
  std::reverse(letters.begin(), letters.end());
  return {cur, G.from_word(letters)};
}

CosetDecomposition coset_decompose(const CoxeterGroup& G, const GroupElement& x, const std::vector<int>& I,
                                   const std::vector<int>& I0) {
  if (static_cast<int>(I.size()) >= G.num_gens()) throw std::invalid_argument("W_I must be finite");
  auto [v, d] = strip_left(G, x, I);
  auto [a, u] = strip_left(G, v, I0);
  return {a, u, d};
}

bool is_L_additive(const CoxeterGroup& G, const std::vector<GroupElement>& seq, const WeightFunction& L) {
  if (seq.empty()) return true;
  const auto& S = G.sys();
  GroupElement y = seq.back();
  for (int k = static_cast<int>(seq.size()) - 2; k >= 0; --k) {
    GroupElement xy = G.multiply(seq[static_cast<std::size_t>(k)], y);
    for (std::size_t a = 0; a < y.shi.size(); ++a) {
      auto [lo1, hi1] = crossing(0, y.shi[a]);
      auto [lo2, hi2] = crossing(y.shi[a], xy.shi[a]);
      for (std::int64_t n = std::max(lo1, lo2); n <= std::min(hi1, hi2); ++n)
        if (L.group->sign(L[S.class_of_hyperplane({static_cast<int>(a), n})]) > 0) return false;
    }
    y = xy;
  }
  return true;
}

bool is_length_additive(const CoxeterGroup& G, const std::vector<GroupElement>& seq) {
  if (seq.empty()) return true;
  GroupElement y = seq.back();
  for (int k = static_cast<int>(seq.size()) - 2; k >= 0; --k) {
    GroupElement xy = G.multiply(seq[static_cast<std::size_t>(k)], y);
    for (std::size_t a = 0; a < y.shi.size(); ++a) {
      auto [lo1, hi1] = crossing(0, y.shi[a]);
      auto [lo2, hi2] = crossing(y.shi[a], xy.shi[a]);
      if (std::max(lo1, lo2) <= std::min(hi1, hi2)) return false;
    }
    y = xy;
  }
  return true;
}

namespace {

using Series = std::vector<long long>;

Series series_mul(const Series& a, const Series& b, int N) {
  Series r(static_cast<std::size_t>(N + 1), 0);
  for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Series series_inverse(const Series& a, int N) {  // a[0] == 1
  Series r(static_cast<std::size_t>(N + 1), 0);
  r[0] = 1;
  for (int n = 1; n <= N; ++n) {
    long long s = 0;
    for (int k = 1; k <= n && k < static_cast<int>(a.size()); ++k) s += a[k] * r[n - k];
    r[n] = -s;
  }
  return r;
}

// Degrees of a connected finite Coxeter graph, or empty if not finite crystallographic.
std::vector<int> degrees(const std::vector<std::vector<int>>& m, const std::vector<int>& comp) {
  int n = static_cast<int>(comp.size());
  if (n == 1) return {2};
  std::vector<int> deg(n, 0);
  int edges = 0, m4 = 0, m6 = 0, inf = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int v = m[comp[i]][comp[j]];
      if (v == 2) continue;
      ++edges;
      ++deg[i];
      ++deg[j];
      if (v == 4) ++m4;
      if (v == 6) ++m6;
      if (v == 0) ++inf;
    }
  if (inf || edges != n - 1) return {};
  int branch = static_cast<int>(std::count_if(deg.begin(), deg.end(), [](int d) { return d >= 3; }));
  std::vector<int> d;
  if (m6) {
    if (n != 2) return {};
    return {2, 6};
  }
  if (m4) {
    if (m4 > 1 || branch) return {};
    // B_n has the double bond at an end; F_4 has it in the middle.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m[comp[i]][comp[j]] == 4 && deg[i] == 2 && deg[j] == 2) return n == 4 ? std::vector<int>{2, 6, 8, 12}
                                                                                  : std::vector<int>{};
    for (int k = 1; k <= n; ++k) d.push_back(2 * k);
    return d;
  }
  if (branch == 0) {
    for (int k = 2; k <= n + 1; ++k) d.push_back(k);
    return d;
  }
  if (branch == 1) {
    // D_n: branch node with two leaf neighbours.
    int b = static_cast<int>(std::find_if(deg.begin(), deg.end(), [](int x) { return x >= 3; }) - deg.begin());
    if (deg[b] != 3) return {};
    int leaves = 0;
    for (int j = 0; j < n; ++j)
      if (j != b && m[comp[b]][comp[j]] == 3 && deg[j] == 1) ++leaves;
    if (leaves < 2) return {};
    for (int k = 1; k < n; ++k) d.push_back(2 * k);
    d.push_back(n);
    return d;
  }
  return {};
}

}  // namespace

std::vector<long long> poincare_counts(const std::vector<std::vector<int>>& coxeter, int N) {
  int k = static_cast<int>(coxeter.size());
  Series inv_total(static_cast<std::size_t>(N + 1), 0);
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<int> I;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) I.push_back(i);
    // Components of the induced graph.
    std::vector<int> comp_of(static_cast<std::size_t>(k), -1);
    std::vector<std::vector<int>> comps;
    for (int v : I) {
      if (comp_of[v] >= 0) continue;
      comps.push_back({});
      std::vector<int> st{v};
      comp_of[v] = static_cast<int>(comps.size()) - 1;
      while (!st.empty()) {
        int a = st.back();
        st.pop_back();
        comps.back().push_back(a);
        for (int b : I)
          if (comp_of[b] < 0 && coxeter[a][b] != 2) {
            comp_of[b] = comp_of[a];
            st.push_back(b);
          }
      }
    }
    Series WI{1};
    int NI = 0;
    bool finite = true;
    for (auto& c : comps) {
      std::sort(c.begin(), c.end());
      auto d = degrees(coxeter, c);
      if (d.empty()) {
        finite = false;
        break;
      }
      for (int di : d) {
        WI = series_mul(WI, Series(static_cast<std::size_t>(di), 1), N + NI + 1);
        NI += di - 1;
      }
    }
    if (!finite) continue;
    Series term = series_inverse(WI, N);
    int sign = (I.size() % 2) ? -1 : 1;
    for (int n = NI; n <= N; ++n) inv_total[n] += sign * term[n - NI];
  }
  return series_inverse(inv_total, N);
}

}  // namespace ac
