#pragma once

#include <json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ac {

constexpr int kMaxRank = 4;

// Element of Z^m, m <= kMaxRank. Canonical only relative to an OrderedGroup.
struct Gamma {
  std::array<std::int64_t, kMaxRank> c{};
  int m = 0;

  Gamma() = default;
  explicit Gamma(int rank) : m(rank) {}
  Gamma(std::initializer_list<std::int64_t> xs);
  static Gamma from_vector(const std::vector<std::int64_t>& xs);
  static Gamma unit(int rank, int i);

  std::int64_t operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  std::int64_t& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  bool is_zero() const;
  std::vector<std::int64_t> to_vector() const;
  std::string str() const;

  Gamma operator+(const Gamma& o) const;
  Gamma operator-(const Gamma& o) const;
  Gamma operator-() const;
  Gamma operator*(std::int64_t k) const;
  bool operator==(const Gamma& o) const { return m == o.m && c == o.c; }
  bool operator!=(const Gamma& o) const { return !(*this == o); }
  // Raw coordinate order, for use as a map key only.
  bool operator<(const Gamma& o) const { return c < o.c; }
};

struct GammaHash {
  std::size_t operator()(const Gamma& g) const;
};

// Total order on Z^m / (X ∩ -X) given by a sequence of linear forms.
class OrderedGroup {
 public:
  using Row = std::vector<std::int64_t>;

  // plus[i] marks class i as lying in the positive part S+; empty means unpartitioned.
  OrderedGroup(int rank, std::vector<Row> forms, std::vector<bool> plus = {});

  static std::shared_ptr<const OrderedGroup> integers();
  // Lexicographic order on Z^m, comparing coordinates in the given order.
  static std::shared_ptr<const OrderedGroup> lex(int rank, const std::vector<int>& coord_order,
                                                 std::vector<bool> plus = {});

  int rank() const { return m_; }
  const std::vector<Row>& forms() const { return forms_; }
  const std::vector<Row>& kernel_basis() const { return kernel_; }
  const std::vector<bool>& plus() const { return plus_; }
  bool has_partition() const { return !plus_.empty(); }

  Gamma canonical(Gamma g) const;
  Gamma zero() const { return Gamma(m_); }
  Gamma basis(int i) const { return canonical(Gamma::unit(m_, i)); }
  std::int64_t apply_form(int k, const Gamma& g) const;

  int compare(const Gamma& a, const Gamma& b) const;
  int sign(const Gamma& g) const;
  bool less(const Gamma& a, const Gamma& b) const { return compare(a, b) < 0; }

  Gamma project_plus(const Gamma& g) const;
  Gamma project_circ(const Gamma& g) const;

  // phi_1 = sum of the S+ duals, and every class is positive with phi_k(omega) >= 0.
  bool admissible(std::string* why = nullptr) const;

  bool same_as(const OrderedGroup& o) const;
  std::string str() const;

 private:
  int m_;
  std::vector<Row> forms_;
  std::vector<Row> kernel_;
  std::vector<bool> plus_;
};

using GroupPtr = std::shared_ptr<const OrderedGroup>;

// Element of the group ring over Gamma. Terms are kept in strictly decreasing exponent order.
class Laurent {
 public:
  using Term = std::pair<Gamma, std::int64_t>;

  Laurent() = default;
  explicit Laurent(const OrderedGroup* g) : g_(g) {}
  static Laurent monomial(const OrderedGroup* g, const Gamma& e, std::int64_t coeff = 1);
  static Laurent constant(const OrderedGroup* g, std::int64_t coeff);

  const OrderedGroup* group() const { return g_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // nullopt stands for minus infinity (the zero element).
  std::optional<Gamma> deg() const;
  std::int64_t coeff(const Gamma& e) const;

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  bool operator==(const Laurent& o) const;
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  Laurent bar() const;
  Laurent part_positive() const;  // exponents > 0
  Laurent part_nonneg() const;    // exponents >= 0
  Laurent part_negative() const;  // exponents < 0
  bool is_strictly_negative() const;
  bool is_bar_invariant() const { return bar() == *this; }

  std::string str() const;

 private:
  static Laurent from_unsorted(const OrderedGroup* g, std::vector<Term> terms);
  const OrderedGroup* g_ = nullptr;
  std::vector<Term> terms_;
};

// Sufficient tests for membership in A_{<0}.
bool phi1_shortcut(const Laurent& a);
bool case3_shortcut(const Laurent& a);

// L: classes of generators -> Gamma.
struct WeightFunction {
  GroupPtr group;
  std::vector<Gamma> values;

  static WeightFunction integral(const std::vector<std::int64_t>& values);
  // Generic weight: class i goes to the i-th basis vector of the group.
  static WeightFunction generic(GroupPtr group);

  int num_classes() const { return static_cast<int>(values.size()); }
  const Gamma& operator[](int cls) const { return values[static_cast<std::size_t>(cls)]; }
  bool non_negative() const;
  bool positive() const;
  bool is_zero() const;
  bool is_zero_on(int cls) const { return group->sign(values[static_cast<std::size_t>(cls)]) == 0; }
  Gamma sum(const std::vector<int>& classes) const;
  std::string str() const;
};

// Group homomorphism determined by the images of the basis classes.
struct Specialization {
  GroupPtr source;
  GroupPtr target;
  std::vector<Gamma> images;

  static Specialization to_weights(GroupPtr source, const std::vector<std::int64_t>& weights);
  // Images of the kernel lattice must vanish.
  bool well_defined() const;
  Gamma operator()(const Gamma& g) const;
  Laurent operator()(const Laurent& a) const;
};

void to_json(nlohmann::json& j, const Gamma& g);
void to_json(nlohmann::json& j, const Laurent& a);
void to_json(nlohmann::json& j, const OrderedGroup& g);
Gamma gamma_from_json(const nlohmann::json& j, const OrderedGroup& g);
Laurent laurent_from_json(const nlohmann::json& j, const OrderedGroup* g);
GroupPtr group_from_json(const nlohmann::json& j);

}  // namespace ac
