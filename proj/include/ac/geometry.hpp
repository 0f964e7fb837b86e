#pragma once

#include "ac/coxeter.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ac {

struct SpecialPoint {
  QVec lambda;
  int type = -1;               // the A0 vertex this point is conjugate to
  std::vector<int> S_lambda;   // generators of the stabilizer, as a standard parabolic
  Gamma L_lambda;
};

// Quarter C'_sigma with vertex lambda_sigma: (v, beta_i) < b_i on negative walls, > b_i otherwise.
struct Quarter {
  int id = 0;
  QMat sigma;                       // linear part of sigma in Omega_0^L
  std::vector<int> beta;            // positive root index of each wall
  std::vector<bool> negative;       // sigma sends the i-th simple root of Phi^L to a negative root
  std::vector<std::int64_t> b;
  QVec lambda;
  int lambda_type = -1;
  std::vector<int> S_lambda;
  GroupElement b_sigma;
};

struct TildeRootSystem {
  std::vector<QVec> positive;      // alpha / b_alpha in this realization
  std::vector<int> source;         // index of alpha in Phi+
  std::vector<std::int64_t> b;     // b_alpha in {1, 2}
};

struct SemidirectFactor {
  GroupElement w_circ;             // in W_{S°}
  GroupElement w_tilde;            // in the normal subgroup generated by the conjugates of S+
  std::vector<int> tilde_word;     // indices into tilde_generators()
};

// Alcove geometry of an affine Weyl group together with a non-negative weight function.
class Geometry {
 public:
  Geometry(const CoxeterGroup& G, WeightFunction L);

  const CoxeterGroup& group() const { return *G_; }
  const WeightFunction& weights() const { return L_; }
  const OrderedGroup& order() const { return *L_.group; }

  Gamma hyperplane_weight(const Hyperplane& h) const;
  bool positive(const Hyperplane& h) const { return order().sign(hyperplane_weight(h)) > 0; }
  const Gamma& root_weight(int alpha) const { return L_alpha_[static_cast<std::size_t>(alpha)]; }
  bool is_maximal(const Hyperplane& h) const;
  bool in_phiL(int alpha) const { return phiL_[static_cast<std::size_t>(alpha)]; }
  const std::vector<int>& phiL_positive() const { return phiL_pos_; }
  const std::vector<int>& simple_L() const { return simple_L_; }
  const std::vector<int>& S_circ() const { return S_circ_; }
  const std::vector<int>& S_plus() const { return S_plus_; }

  // Maximal L-strip orthogonal to alpha containing the alcove with floor f: lo < (x, alpha) < hi.
  std::pair<std::int64_t, std::int64_t> strip(int alpha, std::int64_t f) const;
  std::pair<std::int64_t, std::int64_t> base_strip(int alpha) const { return strip(alpha, 0); }
  bool in_U(const GroupElement& x) const;

  std::vector<Hyperplane> separating_L(const GroupElement& a, const GroupElement& b) const;
  int count_L(const GroupElement& a, const GroupElement& b) const;
  Gamma weight_by_hyperplanes(const GroupElement& x) const;
  Gamma weight(const GroupElement& x) const { return G_->weight_of(L_, x); }

  // Finite parabolic data: nu_L, the union of finite standard parabolics, and its weight-nu part.
  const Gamma& nu() const { return nu_; }
  const std::vector<GroupElement>& finite_union() const { return finite_union_; }
  const std::vector<GroupElement>& wmax() const { return wmax_; }
  const Parabolic& maximal_parabolic(int omit) const { return maximal_[static_cast<std::size_t>(omit)]; }
  GroupElement longest(const std::vector<int>& I) const;

  Gamma point_weight(const QVec& lambda) const;
  bool special_by_weight(const QVec& lambda) const { return point_weight(lambda) == nu_; }
  bool special_by_max_hyperplanes(const QVec& lambda) const;
  bool special_by_lattice(const QVec& lambda) const;
  // Vertices of alcoves inside the box [lo, hi]^dim, with their stabilizer data; special ones only if asked.
  std::vector<SpecialPoint> vertices_in_box(const Q& lo, const Q& hi, bool special_only = true) const;

  // Element whose alcove contains the point p; p must avoid every hyperplane.
  GroupElement alcove_at(const QVec& p) const;
  // Vertex type i with g_x(vertex_i) = lambda, or -1.
  int vertex_type(const GroupElement& x, const QVec& lambda) const;

  TildeRootSystem tilde_root_system() const;

  const std::vector<Quarter>& quarters() const { return quarters_; }
  // Quarter index sigma with xA0 inside C'_sigma, or -1.
  int quarter_of(const GroupElement& x) const;
  bool in_quarter(const Quarter& q, const GroupElement& x) const;
  // Index of the chamber of the linear Phi^L arrangement containing xA0.
  int chamber_of(const GroupElement& x) const;

  const std::vector<GroupElement>& tilde_generators() const { return tilde_gens_; }
  SemidirectFactor semidirect_factor(const GroupElement& w) const;

 private:
  void build_quarters();

  const CoxeterGroup* G_;
  WeightFunction L_;
  std::vector<std::vector<Gamma>> weight_mod_;  // [alpha][n mod g_alpha]
  std::vector<Gamma> L_alpha_;
  std::vector<bool> phiL_;
  std::vector<int> phiL_pos_, simple_L_;
  std::vector<int> S_circ_, S_plus_;
  std::vector<Parabolic> maximal_;
  std::vector<GroupElement> finite_union_, wmax_;
  Gamma nu_;
  std::vector<Quarter> quarters_;
  std::vector<GroupElement> tilde_gens_;
};

// Planar picture of a rank-2 arrangement. fill maps an alcove to a colour class (-1: none).
struct SvgOptions {
  double window = 6.0;
  double scale = 40.0;
};
std::string render_svg(const CoxeterGroup& G, const std::vector<std::pair<GroupElement, int>>& filled,
                       const std::vector<GroupElement>& starred, const SvgOptions& opt = {});
// Alcoves meeting the drawing window.
std::vector<GroupElement> alcoves_in_window(const CoxeterGroup& G, double window);
// Planar coordinates of a point of V.
std::pair<double, double> plane_coords(const CoxeterGroup& G, const QVec& p);

}  // namespace ac
