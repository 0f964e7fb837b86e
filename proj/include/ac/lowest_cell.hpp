#pragma once

#include "ac/geometry.hpp"

#include <string>
#include <vector>

namespace ac {

// w = x · a · w_circ · b with x minimal in x W_lambda, a in W_{S°_lambda}, b = b_sigma.
struct CminDecomposition {
  int sigma = -1;
  GroupElement x, a, w_circ, b;
};

struct SigmaCell {
  int sigma = -1;
  GroupElement b_sigma;
  std::vector<int> members;  // ball indices
};

class LowestCell {
 public:
  explicit LowestCell(const Geometry& geo) : geo_(&geo) {}

  const Geometry& geometry() const { return *geo_; }

  // wA0 is not contained in the union of the maximal strips around A0.
  bool in_cmin(const GroupElement& w) const;
  // Some length-additive factorization x·u·y has u in the weight-nu part of the finite parabolics.
  // The search runs over all such factorizations, so a negative answer is certified.
  bool in_cmin_algebraic(const GroupElement& w) const;

  // Ball-wide versions. The L-additive descriptions only see factors inside the ball.
  std::vector<bool> by_geometry(const Ball& X) const;
  std::vector<bool> by_definition(const Ball& X) const;
  std::vector<bool> by_weight_additive(const Ball& X, const std::vector<GroupElement>& middles) const;
  std::vector<bool> description_A(const Ball& X) const { return by_weight_additive(X, geo_->wmax()); }
  std::vector<bool> description_B(const Ball& X) const;
  // Longest elements w_lambda of the special vertex stabilizers.
  std::vector<GroupElement> special_longest() const;

  CminDecomposition decompose(const GroupElement& w) const;
  GroupElement w_circ(const Quarter& q) const;
  std::vector<SigmaCell> sigma_cells(const Ball& X) const;

 private:
  const Geometry* geo_;
};

struct Claim3Report {
  bool ok = true;
  std::vector<QVec> frakB;          // roots outside Phi^L whose zero hyperplane meets C_1
  int patterns = 0;                 // sign patterns examined
  std::vector<Q> values;            // every pairing computed
  std::vector<std::string> failures;
};

// Finite check, for every sigma in Omega_0^L and every gamma in frakB, of the vertex pairing condition.
Claim3Report verify_claim3prime(const Geometry& geo);
// Same statement before moving to the dominant chamber: every beta with H_{beta,0} meeting C_sigma.
Claim3Report verify_claim3(const Geometry& geo);

struct Claim3Case {
  std::string label;                 // e.g. "F4"
  std::vector<std::string> zero;     // generators of weight zero
  std::vector<std::int64_t> weights; // per class
};
// The (type, S°) cases of the case analysis, each with a concrete weight.
std::vector<Claim3Case> claim3_cases();
// Integral weight killing exactly the classes of the named generators.
WeightFunction weight_with_zeros(const AffineSystem& S, const std::vector<std::string>& zero,
                                 const std::vector<std::int64_t>& positive_values = {});

struct SemidirectReport {
  bool ok = true;
  int checked = 0;
  std::vector<std::string> failures;
};
// c_min(W) ∩ X = W°·c_min(W~) ∩ X and the same for each N_sigma.
SemidirectReport cmin_semidirect_check(const Geometry& geo, int N);

}  // namespace ac
