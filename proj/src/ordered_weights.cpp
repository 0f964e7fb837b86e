#include "ac/ordered_weights.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ac {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

using Row = OrderedGroup::Row;

// Integer basis of {x in Z^m : F x = 0} via unimodular column operations.
std::vector<Row> integer_kernel(const std::vector<Row>& F, int m) {
  std::vector<Row> A = F;
  std::vector<Row> U(static_cast<std::size_t>(m), Row(static_cast<std::size_t>(m), 0));
  for (int i = 0; i < m; ++i) U[i][i] = 1;
  auto col_axpy = [&](int dst, int src, std::int64_t q) {  // col dst -= q * col src
    for (auto& r : A) r[dst] -= q * r[src];
    for (auto& r : U) r[dst] -= q * r[src];
  };
  auto col_swap = [&](int a, int b) {
    for (auto& r : A) std::swap(r[a], r[b]);
    for (auto& r : U) std::swap(r[a], r[b]);
  };
  int piv = 0;
  for (std::size_t r = 0; r < A.size(); ++r) {
    for (int c = piv + 1; c < m; ++c) {
      while (A[r][c] != 0) {
        std::int64_t q = A[r][piv] / A[r][c];
        col_axpy(piv, c, q);
        col_swap(piv, c);
      }
    }
    if (piv >= m || A[r][piv] == 0)
      throw std::invalid_argument("form " + std::to_string(r + 1) + " vanishes on the previous kernel");
    ++piv;
  }
  std::vector<Row> ker;
  for (int c = piv; c < m; ++c) {
    Row v(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) v[i] = U[i][c];
    ker.push_back(v);
  }
  return ker;
}

void hermite_normal_form(std::vector<Row>& H, int m) {
  std::size_t row = 0;
  for (int col = 0; col < m && row < H.size(); ++col) {
    for (std::size_t i = row + 1; i < H.size(); ++i) {
      while (H[i][col] != 0) {
        std::int64_t q = H[row][col] / H[i][col];
        for (int j = 0; j < m; ++j) H[row][j] -= q * H[i][j];
        std::swap(H[row], H[i]);
      }
    }
    if (H[row][col] == 0) continue;
    if (H[row][col] < 0)
      for (auto& x : H[row]) x = -x;
    for (std::size_t i = 0; i < row; ++i) {
      std::int64_t q = floor_div(H[i][col], H[row][col]);
      for (int j = 0; j < m; ++j) H[i][j] -= q * H[row][j];
    }
    ++row;
  }
  H.resize(row);
}

int first_nonzero(const Row& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0) return static_cast<int>(i);
  return -1;
}

}  // namespace

Gamma::Gamma(std::initializer_list<std::int64_t> xs) : m(static_cast<int>(xs.size())) {
  if (m > kMaxRank) throw std::invalid_argument("Gamma rank too large");
  std::copy(xs.begin(), xs.end(), c.begin());
}

Gamma Gamma::from_vector(const std::vector<std::int64_t>& xs) {
  if (xs.size() > static_cast<std::size_t>(kMaxRank)) throw std::invalid_argument("Gamma rank too large");
  Gamma g(static_cast<int>(xs.size()));
  std::copy(xs.begin(), xs.end(), g.c.begin());
  return g;
}

Gamma Gamma::unit(int rank, int i) {
  Gamma g(rank);
  g[i] = 1;
  return g;
}

bool Gamma::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; });
}

std::vector<std::int64_t> Gamma::to_vector() const { return {c.begin(), c.begin() + m}; }

std::string Gamma::str() const {
  std::string s = "(";
  for (int i = 0; i < m; ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

Gamma Gamma::operator+(const Gamma& o) const {
  Gamma r(std::max(m, o.m));
  for (int i = 0; i < kMaxRank; ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

Gamma Gamma::operator-(const Gamma& o) const {
  Gamma r(std::max(m, o.m));
  for (int i = 0; i < kMaxRank; ++i) r.c[i] = c[i] - o.c[i];
  return r;
}

Gamma Gamma::operator-() const {
  Gamma r(m);
  for (int i = 0; i < kMaxRank; ++i) r.c[i] = -c[i];
  return r;
}

Gamma Gamma::operator*(std::int64_t k) const {
  Gamma r(m);
  for (int i = 0; i < kMaxRank; ++i) r.c[i] = k * c[i];
  return r;
}

std::size_t GammaHash::operator()(const Gamma& g) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : g.c) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
  return h;
}

OrderedGroup::OrderedGroup(int rank, std::vector<Row> forms, std::vector<bool> plus)
    : m_(rank), forms_(std::move(forms)), plus_(std::move(plus)) {
  if (m_ < 1 || m_ > kMaxRank) throw std::invalid_argument("unsupported group rank");
  if (forms_.empty()) throw std::invalid_argument("at least one form is required");
  for (const auto& f : forms_)
    if (static_cast<int>(f.size()) != m_) throw std::invalid_argument("form dimension mismatch");
  if (!plus_.empty() && static_cast<int>(plus_.size()) != m_)
    throw std::invalid_argument("partition dimension mismatch");
  kernel_ = integer_kernel(forms_, m_);
  hermite_normal_form(kernel_, m_);
}

GroupPtr OrderedGroup::integers() {
  static GroupPtr z = std::make_shared<OrderedGroup>(1, std::vector<Row>{{1}});
  return z;
}

GroupPtr OrderedGroup::lex(int rank, const std::vector<int>& coord_order, std::vector<bool> plus) {
  std::vector<Row> forms;
  for (int i : coord_order) {
    Row r(static_cast<std::size_t>(rank), 0);
    r[i] = 1;
    forms.push_back(r);
  }
  return std::make_shared<OrderedGroup>(rank, forms, std::move(plus));
}

Gamma OrderedGroup::canonical(Gamma g) const {
  g.m = m_;
  for (const auto& r : kernel_) {
    int p = first_nonzero(r);
    std::int64_t q = floor_div(g[p], r[p]);
    if (q == 0) continue;
    for (int j = 0; j < m_; ++j) g[j] -= q * r[j];
  }
  return g;
}

std::int64_t OrderedGroup::apply_form(int k, const Gamma& g) const {
  std::int64_t s = 0;
  for (int j = 0; j < m_; ++j) s += forms_[k][j] * g[j];
  return s;
}

int OrderedGroup::sign(const Gamma& g) const {
  for (std::size_t k = 0; k < forms_.size(); ++k) {
    std::int64_t v = apply_form(static_cast<int>(k), g);
    if (v > 0) return 1;
    if (v < 0) return -1;
  }
  return 0;
}

int OrderedGroup::compare(const Gamma& a, const Gamma& b) const {
  if (a.m != m_ || b.m != m_) throw std::invalid_argument("Gamma dimension mismatch");
  return sign(a - b);
}

Gamma OrderedGroup::project_plus(const Gamma& g) const {
  if (!has_partition()) throw std::logic_error("group has no S+/S0 partition");
  Gamma r(m_);
  for (int i = 0; i < m_; ++i) r[i] = plus_[i] ? g[i] : 0;
  return canonical(r);
}

Gamma OrderedGroup::project_circ(const Gamma& g) const {
  if (!has_partition()) throw std::logic_error("group has no S+/S0 partition");
  Gamma r(m_);
  for (int i = 0; i < m_; ++i) r[i] = plus_[i] ? 0 : g[i];
  return canonical(r);
}

bool OrderedGroup::admissible(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!has_partition()) return fail("no S+/S0 partition");
  for (int i = 0; i < m_; ++i)
    if (forms_[0][i] != (plus_[i] ? 1 : 0)) return fail("phi_1 is not the sum of the S+ duals");
  for (int i = 0; i < m_; ++i) {
    Gamma w = Gamma::unit(m_, i);
    if (sign(w) <= 0) return fail("class " + std::to_string(i) + " is not positive");
    for (std::size_t k = 0; k < forms_.size(); ++k)
      if (apply_form(static_cast<int>(k), w) < 0)
        return fail("phi_" + std::to_string(k + 1) + " is negative on class " + std::to_string(i));
  }
  return true;
}

bool OrderedGroup::same_as(const OrderedGroup& o) const {
  return m_ == o.m_ && forms_ == o.forms_ && plus_ == o.plus_;
}

std::string OrderedGroup::str() const {
  std::ostringstream os;
  os << "Z^" << m_ << " forms[";
  for (std::size_t k = 0; k < forms_.size(); ++k) {
    if (k) os << ";";
    for (std::size_t j = 0; j < forms_[k].size(); ++j) os << (j ? "," : "") << forms_[k][j];
  }
  os << "]";
  return os.str();
}

Laurent Laurent::monomial(const OrderedGroup* g, const Gamma& e, std::int64_t coeff) {
  Laurent r(g);
  if (coeff != 0) r.terms_.emplace_back(g->canonical(e), coeff);
  return r;
}

Laurent Laurent::constant(const OrderedGroup* g, std::int64_t coeff) {
  return monomial(g, g->zero(), coeff);
}

Laurent Laurent::from_unsorted(const OrderedGroup* g, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [g](const Term& a, const Term& b) { return g->compare(a.first, b.first) > 0; });
  Laurent r(g);
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first)
      r.terms_.back().second += t.second;
    else
      r.terms_.push_back(t);
    if (r.terms_.back().second == 0) r.terms_.pop_back();
  }
  // A run of equal exponents may have cancelled to zero and then been followed by the same exponent.
  std::vector<Term> merged;
  for (auto& t : r.terms_) {
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
      if (merged.back().second == 0) merged.pop_back();
    } else {
      merged.push_back(t);
    }
  }
  r.terms_ = std::move(merged);
  return r;
}

std::optional<Gamma> Laurent::deg() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().first;
}

std::int64_t Laurent::coeff(const Gamma& e) const {
  for (const auto& t : terms_)
    if (t.first == e) return t.second;
  return 0;
}

Laurent Laurent::operator+(const Laurent& o) const {
  const OrderedGroup* g = g_ ? g_ : o.g_;
  if (terms_.empty()) {
    Laurent r = o;
    r.g_ = g;
    return r;
  }
  if (o.terms_.empty()) {
    Laurent r = *this;
    r.g_ = g;
    return r;
  }
  Laurent r(g);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size()) c = -1;
    else if (j == o.terms_.size()) c = 1;
    else c = g->compare(terms_[i].first, o.terms_[j].first);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      std::int64_t s = terms_[i].second + o.terms_[j].second;
      if (s != 0) r.terms_.emplace_back(terms_[i].first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
  const OrderedGroup* g = g_ ? g_ : o.g_;
  if (terms_.empty() || o.terms_.empty()) return Laurent(g);
  if (o.terms_.size() == 1 && o.terms_[0].first.is_zero()) {
    Laurent r = *this;
    for (auto& t : r.terms_) t.second *= o.terms_[0].second;
    return r;
  }
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.emplace_back(g->canonical(a.first + b.first), a.second * b.second);
  return from_unsorted(g, std::move(prod));
}

bool Laurent::operator==(const Laurent& o) const { return terms_ == o.terms_; }

Laurent Laurent::bar() const {
  Laurent r(g_);
  r.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    r.terms_.emplace_back(g_->canonical(-it->first), it->second);
  return r;
}

Laurent Laurent::part_positive() const {
  Laurent r(g_);
  for (const auto& t : terms_)
    if (g_->sign(t.first) > 0) r.terms_.push_back(t);
  return r;
}

Laurent Laurent::part_nonneg() const {
  Laurent r(g_);
  for (const auto& t : terms_)
    if (g_->sign(t.first) >= 0) r.terms_.push_back(t);
  return r;
}

Laurent Laurent::part_negative() const {
  Laurent r(g_);
  for (const auto& t : terms_)
    if (g_->sign(t.first) < 0) r.terms_.push_back(t);
  return r;
}

bool Laurent::is_strictly_negative() const {
  return terms_.empty() || g_->sign(terms_.front().first) < 0;
}

std::string Laurent::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(t.second) + "v^" + t.first.str();
  }
  return s;
}

bool phi1_shortcut(const Laurent& a) {
  if (a.is_zero()) return true;
  const OrderedGroup* g = a.group();
  return g->apply_form(0, g->project_plus(*a.deg())) < 0;
}

bool case3_shortcut(const Laurent& a) {
  if (a.is_zero()) return true;
  const OrderedGroup* g = a.group();
  if (g->rank() != 3) return false;
  return g->compare(g->project_plus(*a.deg()), g->canonical(Gamma{-1, 0, 1})) <= 0;
}

WeightFunction WeightFunction::integral(const std::vector<std::int64_t>& values) {
  WeightFunction L;
  L.group = OrderedGroup::integers();
  for (auto v : values) L.values.push_back(Gamma{v});
  return L;
}

WeightFunction WeightFunction::generic(GroupPtr group) {
  WeightFunction L;
  for (int i = 0; i < group->rank(); ++i) L.values.push_back(group->basis(i));
  L.group = std::move(group);
  return L;
}

bool WeightFunction::non_negative() const {
  return std::all_of(values.begin(), values.end(), [&](const Gamma& g) { return group->sign(g) >= 0; });
}

bool WeightFunction::positive() const {
  return std::all_of(values.begin(), values.end(), [&](const Gamma& g) { return group->sign(g) > 0; });
}

bool WeightFunction::is_zero() const {
  return std::all_of(values.begin(), values.end(), [&](const Gamma& g) { return group->sign(g) == 0; });
}

Gamma WeightFunction::sum(const std::vector<int>& classes) const {
  Gamma s = group->zero();
  for (int c : classes) s = s + values[static_cast<std::size_t>(c)];
  return group->canonical(s);
}

std::string WeightFunction::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + values[i].str();
  return s + "]";
}

Specialization Specialization::to_weights(GroupPtr source, const std::vector<std::int64_t>& weights) {
  if (static_cast<int>(weights.size()) != source->rank())
    throw std::invalid_argument("specialization needs one weight per class");
  Specialization th;
  th.source = std::move(source);
  th.target = OrderedGroup::integers();
  for (auto w : weights) th.images.push_back(Gamma{w});
  return th;
}

bool Specialization::well_defined() const {
  for (const auto& r : source->kernel_basis()) {
    Gamma img = target->zero();
    for (int i = 0; i < source->rank(); ++i) img = img + images[static_cast<std::size_t>(i)] * r[i];
    if (!target->canonical(img).is_zero()) return false;
  }
  return true;
}

Gamma Specialization::operator()(const Gamma& g) const {
  Gamma img = target->zero();
  for (int i = 0; i < source->rank(); ++i) img = img + images[static_cast<std::size_t>(i)] * g[i];
  return target->canonical(img);
}

Laurent Specialization::operator()(const Laurent& a) const {
  Laurent r(target.get());
  for (const auto& t : a.terms()) r += Laurent::monomial(target.get(), (*this)(t.first), t.second);
  return r;
}

void to_json(nlohmann::json& j, const Gamma& g) { j = g.to_vector(); }

void to_json(nlohmann::json& j, const Laurent& a) {
  j = nlohmann::json::array();
  for (const auto& t : a.terms()) j.push_back({t.first.to_vector(), t.second});
}

void to_json(nlohmann::json& j, const OrderedGroup& g) {
  j = {{"rank", g.rank()}, {"forms", g.forms()}, {"kernel_basis", g.kernel_basis()}};
  if (g.has_partition()) j["plus"] = g.plus();
}

Gamma gamma_from_json(const nlohmann::json& j, const OrderedGroup& g) {
  return g.canonical(Gamma::from_vector(j.get<std::vector<std::int64_t>>()));
}

Laurent laurent_from_json(const nlohmann::json& j, const OrderedGroup* g) {
  Laurent r(g);
  for (const auto& t : j) r += Laurent::monomial(g, gamma_from_json(t.at(0), *g), t.at(1).get<std::int64_t>());
  return r;
}

GroupPtr group_from_json(const nlohmann::json& j) {
  std::vector<bool> plus;
  if (j.contains("plus")) plus = j.at("plus").get<std::vector<bool>>();
  return std::make_shared<OrderedGroup>(j.at("rank").get<int>(), j.at("forms").get<std::vector<Row>>(),
                                        plus);
}

}  // namespace ac
