#pragma once

#include "ac/kl.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ac {

// ker(sum n_i omega_i^*) with a primitive integer normal whose first nonzero entry is positive.
struct RationalHyperplane {
  std::vector<std::int64_t> normal;
  bool operator==(const RationalHyperplane& o) const { return normal == o.normal; }
  bool operator<(const RationalHyperplane& o) const { return normal < o.normal; }
  std::string str() const;
};

RationalHyperplane make_hyperplane(const std::vector<Q>& normal);
// Adds sign flips of single coordinates until the set is stable; deduplicates.
std::vector<RationalHyperplane> tau_closure(std::vector<RationalHyperplane> hs);

// Coordinates (s, t).
std::vector<RationalHyperplane> arrangement_BFG(const Q& m1, const Q& m2);
// Coordinates (t, s, t'); the listed hyperplanes only.
std::vector<RationalHyperplane> arrangement_C_listed(const std::vector<Q>& m);
// With the tau-closure.
std::vector<RationalHyperplane> arrangement_C(const std::vector<Q>& m);
// m = (N^2, N^2, N, N, N, 1/N).
std::vector<Q> default_m(int N0);

using SignVector = std::vector<int>;
SignVector facet_of(const std::vector<Q>& L, const std::vector<RationalHyperplane>& arr);
// Classes that vanish on the whole facet of L: those in the kernel of every hyperplane where L is zero.
std::vector<int> facet_zero_classes(const std::vector<Q>& L);
// F lies in the closure of the facet of C.
bool in_closure(const SignVector& F, const SignVector& C);
// L(t) > L(t'), L(t') > m2 L(s), L(t) - L(t') < m5 L(s).
bool in_chamber_C1(const std::vector<Q>& L, const std::vector<Q>& m);

struct GammaPlus {
  std::vector<Gamma> from_P, from_M, from_sum;
  std::vector<Gamma> all() const;
};
GammaPlus gamma_plus(const KLTable& T);
bool check_specialization_gate(const std::vector<Gamma>& gammas, const Specialization& theta,
                               std::vector<Gamma>* offenders = nullptr);

// Largest r in {0} ∪ {k/j : 1 <= j, k <= N} with p >= r q, as (num, den).
std::pair<std::int64_t, std::int64_t> threshold_ratio(std::int64_t p, std::int64_t q, int N);

// Generic order for a region of weights near the target, with S+ and phi_1 fixed by the region:
//   two classes (s, t): "s-large" (L(s) > N L(t)), "t-large"
//   C layout (t, s, t'): "t-large" (L(t) > N L(s) + N L(t')), "s-large",
//     "apart" (L(t), L(t') > N^2 L(s), L(t) - L(t') > N L(s)), "near" (L(t), L(t') > N^2 L(s) > 0, L(t) >= L(t')).
// Throws std::invalid_argument when the target lies outside the region.
GroupPtr order_for_region(const std::string& region, const std::vector<std::int64_t>& target, int N);

struct GateReport {
  bool ok = false;
  std::string region;
  std::string order;
  std::size_t gamma1 = 0, gamma2 = 0, gamma3 = 0;
  bool coordinate_bound = true;  // coordinates of Gamma_+(N) inside [-N, N]
  std::vector<std::string> offenders;
  nlohmann::json to_json() const;
};
GateReport run_gate(const KLTable& generic, const std::vector<std::int64_t>& target, const std::string& region = "");

// Imports P and M by specialization when the gate holds; every tenth C_w is re-verified.
std::optional<KLTable> import_by_specialization(const KLTable& generic, const Specialization& theta,
                                                const WeightFunction& target, int* spot_checked = nullptr);

struct PieceReport {
  int sigma = -1;
  std::string b_sigma;
  int size = 0;
  int classes = 0;  // chamber classes inside the piece
  bool ok = true;
  std::vector<std::string> straddling;  // chamber classes meeting the piece and its complement
};

struct SemicontinuityReport {
  std::vector<std::int64_t> facet, chamber;
  int N = 0;
  bool closure_checked = false;
  bool closure_ok = true;
  std::vector<PieceReport> pieces;
  PieceReport cmin_left, cmin_two_sided;
  long truncated_edges = 0;
  bool ok() const;
  nlohmann::json to_json() const;
};

// N_sigma of the facet weight against the left classes of the chamber weight on the ball, and c_min against
// the left and two-sided classes. With an arrangement, the facet must lie in the closure of the chamber.
SemicontinuityReport semicontinuity_check(const CoxeterGroup& G, const std::vector<std::int64_t>& facet,
                                          const std::vector<std::int64_t>& chamber, int N,
                                          const std::vector<RationalHyperplane>* arrangement = nullptr,
                                          const KLTable* chamber_table = nullptr);

}  // namespace ac
