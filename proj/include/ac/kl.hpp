#pragma once

#include "ac/lowest_cell.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ac {

// Raised when a product or edge needs an element outside the ball.
struct BallTruncation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of the Hecke algebra: ball index -> coefficient. Zero coefficients are never stored.
using HeckeElt = std::map<int, Laurent>;

void add_to(HeckeElt& h, int w, const Laurent& a);
HeckeElt scale(const HeckeElt& h, const Laurent& a);
HeckeElt operator+(const HeckeElt& a, const HeckeElt& b);
HeckeElt operator-(const HeckeElt& a, const HeckeElt& b);

// T-basis arithmetic over a ball. Every element of the Bruhat ideal of a product of
// length <= N lies in the ball, so products stay inside whenever the result does.
class Hecke {
 public:
  Hecke(const Ball& X, WeightFunction L);

  const Ball& ball() const { return *X_; }
  const CoxeterGroup& group() const { return X_->group(); }
  const WeightFunction& weights() const { return L_; }
  const OrderedGroup* order() const { return L_.group.get(); }
  bool zero_weight(int s) const { return zero_[static_cast<std::size_t>(s)]; }

  Laurent one() const { return Laurent::constant(order(), 1); }
  Laurent v(int s) const { return vs_[static_cast<std::size_t>(s)]; }
  Laurent v_inv(int s) const { return vs_inv_[static_cast<std::size_t>(s)]; }
  // v_s - v_s^{-1}
  Laurent v_diff(int s) const { return vdiff_[static_cast<std::size_t>(s)]; }

  HeckeElt T(int w) const { return {{w, one()}}; }
  // C_s: T_s + v_s^{-1} when L(s) > 0, and T_s itself when L(s) = 0.
  HeckeElt C_s(int s) const;
  HeckeElt ts_times(int s, const HeckeElt& h) const;
  HeckeElt tx_times(int x, const HeckeElt& h) const;
  HeckeElt multiply(const HeckeElt& a, const HeckeElt& b) const;
  // f_{x,y,z} for all z.
  HeckeElt structure_constants(int x, int y) const { return tx_times(x, T(y)); }

  const HeckeElt& bar_T(int w) const;
  HeckeElt bar(const HeckeElt& h) const;

 private:
  const Ball* X_;
  WeightFunction L_;
  std::vector<bool> zero_;
  std::vector<Laurent> vs_, vs_inv_, vdiff_;
  mutable std::vector<std::optional<HeckeElt>> bar_memo_;
};

// P_{y,w} and M^s_{y,w} for all y, w in a ball. The ball must outlive the table.
class KLTable {
 public:
  KLTable(const Ball& X, WeightFunction L);

  const Hecke& hecke() const { return H_; }
  const Ball& ball() const { return H_.ball(); }
  const WeightFunction& weights() const { return H_.weights(); }
  const OrderedGroup* order() const { return H_.order(); }
  int size() const { return ball().size(); }

  // C_w in the T-basis: y -> P_{y,w}.
  const HeckeElt& C(int w) const { return C_[static_cast<std::size_t>(w)]; }
  Laurent P(int y, int w) const;
  // M^s_{z,w} for sw > w, L(s) > 0: z -> M.
  const HeckeElt& M(int s, int w) const { return M_[static_cast<std::size_t>(w)][static_cast<std::size_t>(s)]; }
  Laurent Mpoly(int s, int z, int w) const;

  // C_s·C_w in the C-basis; throws BallTruncation when sw leaves the ball.
  HeckeElt cs_times_cw(int s, int w) const;
  // Expands a C-basis combination in the T-basis.
  HeckeElt to_T(const HeckeElt& c) const;

  nlohmann::json to_json() const;
  // Rebuilds a table from JSON after checking P_{y,y} = 1, triangularity, P in A_{<0} and bar-invariant M.
  static std::optional<KLTable> from_json(const Ball& X, const WeightFunction& L, const nlohmann::json& j,
                                          std::string* why = nullptr);
  // Every P and M pushed through theta; no check is made here.
  static KLTable specialized(const KLTable& T, const Specialization& theta, const WeightFunction& target);

 private:
  KLTable(const Ball& X, WeightFunction L, bool fill);
  void fill();
  void fill_M(int w);

  Hecke H_;
  std::vector<HeckeElt> C_;
  std::vector<std::vector<HeckeElt>> M_;
};

// Invariants of a table: bar(C_w) = C_w, P in A_{<0}, P_{y,w} = v_s^{-1} P_{sy,w}, deg M < L(s), M bar-invariant.
struct KLInvariantReport {
  bool ok = true;
  long checks = 0;
  std::vector<std::string> failures;
  void fail(std::string msg);
};
KLInvariantReport check_kl_invariants(const KLTable& T);

// Cache key for a table: group label, order, weights and radius.
std::string table_key(const KLTable& T);
std::string table_key(const Ball& X, const WeightFunction& L);
// Loads a cached table from dir if present and valid, otherwise computes and stores it.
KLTable cached_table(const Ball& X, const WeightFunction& L, const std::string& dir, bool* loaded = nullptr);

enum class Flavor { Left, Right, TwoSided };

struct CellPartition {
  Flavor flavor = Flavor::Left;
  int N = 0;
  // w -> y when C_y occurs in h·C_w (left); edges are never stored twice.
  std::vector<std::vector<int>> edges;
  long step_edges = 0;  // from the C_{sw} term
  long mu_edges = 0;    // from nonzero M^s_{z,w}
  long truncated_edges = 0;
  bool truncated() const { return truncated_edges > 0; }
  std::vector<int> cls;                  // element -> class
  std::vector<std::vector<int>> classes; // numbered by smallest member
  std::vector<std::vector<int>> below;   // class -> classes it reaches directly
};

CellPartition cell_preorder(const KLTable& T, Flavor flavor);

// Sum over directions alpha of I_{x,y} of the largest weight in H_{x,y} with direction alpha.
Gamma c_bound(const CoxeterGroup& G, const WeightFunction& L, const GroupElement& x, const GroupElement& y);

struct CheckReport {
  bool ok = true;
  long checked = 0;
  long skipped = 0;  // witnesses outside the ball
  std::vector<std::string> failures;
  void fail(std::string msg);
  nlohmann::json to_json() const;
};

// deg(f_{x,y,z}) <= c_{x,y} for all x, y with l(x) + l(y) within the Hecke ball.
CheckReport verify_degree_bounds(const Hecke& H, int radius);

// Degree bound on P_{x,y} and the vanishing of M^s_{x,y} (s in S°) for y = a w°_I z.
// S° is read from the S+ partition of the table's order.
CheckReport verify_klasym(const KLTable& T, const std::vector<int>& I);
std::vector<int> s_circ_of(const KLTable& T);

// The lowest-cell data of L+ together with the table of L.
class InductionData {
 public:
  InductionData(const KLTable& T, const Geometry& plus);

  const KLTable& table() const { return *T_; }
  const Geometry& geometry() const { return *geo_; }
  const LowestCell& cell() const { return C_; }
  int sigma_of(int i) const { return sigma_[static_cast<std::size_t>(i)]; }  // -1 outside c_min
  bool in_U(int i) const { return in_U_[static_cast<std::size_t>(i)]; }
  // b_{sigma'} <= b_sigma (strict when asked) in the Bruhat order.
  bool b_leq(int sigma2, int sigma, bool strict = false) const;
  bool in_N_leq(int i, int sigma) const;
  // x in X_lambda of quarter sigma: no right descent in S_lambda.
  bool in_X(int x, int sigma) const;

 private:
  const KLTable* T_;
  const Geometry* geo_;
  LowestCell C_;
  std::vector<int> sigma_;
  std::vector<bool> in_U_;
};

// T_x C_w = T_{xw} + sum over N_{sigma'}, b_{sigma'} < b_sigma, modulo H_{<0}.
CheckReport verify_tx_cw(const InductionData& D);

struct InductionReport {
  int sigma = -1;
  CheckReport I1, I2, I3, I5, left_ideal, geometry;
  bool ok() const { return I1.ok && I2.ok && I3.ok && I5.ok && left_ideal.ok && geometry.ok; }
  nlohmann::json to_json() const;
};
InductionReport check_induction_conditions(const InductionData& D, int sigma, const CellPartition& left);

// L+ from L: the values on S° are dropped.
WeightFunction plus_part(const WeightFunction& L);

}  // namespace ac
