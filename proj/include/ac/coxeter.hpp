#pragma once

#include "ac/ordered_weights.hpp"
#include "ac/root_system.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ac {

// w is identified with the alcove wA0 = g(A0). Left multiplication by s crosses the
// face of type s, so g_{sw} = g_w ∘ r_s and g_{xy} = g_y ∘ g_x.
struct GroupElement {
  Affine g;
  std::vector<std::int64_t> shi;  // floor((center, alpha)) per positive root

  bool operator==(const GroupElement& o) const { return shi == o.shi; }
  bool operator!=(const GroupElement& o) const { return shi != o.shi; }
  bool operator<(const GroupElement& o) const { return shi < o.shi; }
  QVec center(const AffineSystem& S) const { return g(S.a0_center); }
};

struct ShiHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const;
};

class CoxeterGroup {
 public:
  explicit CoxeterGroup(AffineSystem S);

  const AffineSystem& sys() const { return S_; }
  const RootSystem& roots() const { return S_.R; }
  int num_gens() const { return S_.num_gens(); }

  GroupElement make(const Affine& g) const;
  GroupElement identity() const;
  GroupElement generator(int s) const { return make(S_.reflections[s]); }
  GroupElement multiply(const GroupElement& x, const GroupElement& y) const;
  GroupElement invert(const GroupElement& x) const;
  GroupElement apply_generator(int s, const GroupElement& x) const;  // s·x
  GroupElement times_generator(const GroupElement& x, int s) const;  // x·s
  GroupElement from_word(const std::vector<int>& word) const;

  int length(const GroupElement& x) const;
  std::vector<Hyperplane> separating(const GroupElement& a, const GroupElement& b) const;
  std::vector<Hyperplane> separating_from_base(const GroupElement& x) const;
  bool separates(const Hyperplane& h, const GroupElement& a, const GroupElement& b) const;

  bool is_left_descent(int s, const GroupElement& x) const;
  bool is_right_descent(const GroupElement& x, int s) const;
  std::vector<int> descents_left(const GroupElement& x) const;
  std::vector<int> descents_right(const GroupElement& x) const;
  std::vector<int> reduced_word(const GroupElement& x) const;

  bool bruhat_leq(const GroupElement& x, const GroupElement& y) const;

  std::string word_string(const std::vector<int>& word) const;
  std::string str(const GroupElement& x) const { return word_string(reduced_word(x)); }
  // Accepts "t.s.t'" or a compact word such as "tst's" (longest-name matching).
  std::optional<std::vector<int>> parse_word(const std::string& text) const;
  std::optional<GroupElement> parse(const std::string& text) const;

  Gamma weight_of(const WeightFunction& L, const GroupElement& x) const;
  Gamma weight_of_word(const WeightFunction& L, const std::vector<int>& word) const;
  Gamma hyperplane_weight(const WeightFunction& L, const Hyperplane& h) const;

 private:
  AffineSystem S_;
};

// Interval of hyperplane indices n crossed in direction alpha between alcove floors fa and fb.
inline std::pair<std::int64_t, std::int64_t> crossing(std::int64_t fa, std::int64_t fb) {
  return fa < fb ? std::make_pair(fa + 1, fb) : std::make_pair(fb + 1, fa);
}

// All elements of length <= N, indexed in (length, reduced word) order.
class Ball {
 public:
  Ball(const CoxeterGroup& G, int N);

  const CoxeterGroup& group() const { return *G_; }
  int radius() const { return N_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const GroupElement& operator[](int i) const { return elems_[static_cast<std::size_t>(i)]; }
  const std::vector<GroupElement>& elements() const { return elems_; }
  int length(int i) const { return len_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& word(int i) const { return words_[static_cast<std::size_t>(i)]; }
  std::string str(int i) const { return G_->word_string(word(i)); }

  int index(const GroupElement& x) const;
  int find(const std::string& text) const;
  int lmul(int s, int i) const { return lmul_[static_cast<std::size_t>(i)][s]; }  // -1 outside the ball
  int rmul(int i, int s) const { return rmul_[static_cast<std::size_t>(i)][s]; }
  int inverse(int i) const { return inv_[static_cast<std::size_t>(i)]; }
  // Product via generator steps; -1 when an intermediate leaves the ball.
  int mul(int x, int y) const;
  bool left_descent(int s, int i) const;
  bool right_descent(int i, int s) const;
  // Elements of length exactly k occupy [layer_begin(k), layer_begin(k+1)).
  int layer_begin(int k) const { return layer_[static_cast<std::size_t>(k)]; }

  bool bruhat_leq(int x, int y) const;
  void ensure_bruhat() const;

 private:
  const CoxeterGroup* G_;
  int N_;
  std::vector<GroupElement> elems_;
  std::vector<int> len_;
  std::vector<std::vector<int>> words_;
  std::vector<std::vector<int>> lmul_, rmul_;
  std::vector<int> inv_;
  std::vector<int> layer_;
  std::unordered_map<std::vector<std::int64_t>, int, ShiHash> idx_;
  mutable std::vector<std::vector<std::uint64_t>> bruhat_;
};

struct Parabolic {
  std::vector<int> I;
  bool finite = false;
  std::vector<GroupElement> elements;  // filled when finite
  GroupElement longest;
};

Parabolic parabolic(const CoxeterGroup& G, std::vector<int> I);

struct CosetDecomposition {
  GroupElement a, u, d;
};

// x = a·u·d with d minimal in W_I x and u minimal in W_{I0} (x d^-1), I0 ⊆ I.
CosetDecomposition coset_decompose(const CoxeterGroup& G, const GroupElement& x, const std::vector<int>& I,
                                   const std::vector<int>& I0);
// Strips left descents from I; returns (v, d) with x = v·d, d minimal in W_I x.
std::pair<GroupElement, GroupElement> strip_left(const CoxeterGroup& G, const GroupElement& x,
                                                 const std::vector<int>& I);
// Strips right descents from I; returns (x', v) with x = x'·v, x' minimal in x W_I.
std::pair<GroupElement, GroupElement> strip_right(const CoxeterGroup& G, const GroupElement& x,
                                                  const std::vector<int>& I);

bool is_L_additive(const CoxeterGroup& G, const std::vector<GroupElement>& seq, const WeightFunction& L);
bool is_length_additive(const CoxeterGroup& G, const std::vector<GroupElement>& seq);

// Coefficient of the Poincaré series sum_w q^{l(w)} up to degree N, from the Coxeter matrix alone.
std::vector<long long> poincare_counts(const std::vector<std::vector<int>>& coxeter, int N);

}  // namespace ac
