#pragma once

#include "ac/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace ac {

enum class Family { A, B, C, F, G };

Family family_from_char(char c);
char family_char(Family f);

struct RootSystem {
  Family family = Family::A;
  int rank = 0;
  int dim = 0;                      // ambient dimension
  std::vector<QVec> complement;     // spans the orthogonal complement of V in the ambient space
  std::vector<QVec> positive;       // positive roots; indices used throughout
  std::vector<int> simple;          // indices into positive
  int highest = -1;                 // index of the highest root

  int num_positive() const { return static_cast<int>(positive.size()); }
  // Index of a positive root, or -1. Negative roots map to -(index+2).
  int find(const QVec& v) const;
  QVec coroot(int i) const;
  Q norm2(int i) const { return dot(positive[i], positive[i]); }
  bool same_length(int i, int j) const { return norm2(i) == norm2(j); }
  // Coordinates in the simple basis.
  QVec simple_coords(const QVec& v) const;

  std::map<std::vector<std::int64_t>, int> index;  // key -> positive index
};

// Builds the root system from its simple roots by reflection closure.
RootSystem root_system_from_simple(Family f, const std::vector<QVec>& simple, int dim,
                                   std::vector<QVec> complement);
RootSystem build_root_system(Family f, int rank);

std::vector<std::int64_t> qkey(const QVec& v);

// H_{alpha,n} = {x | (x, alpha) = n} with alpha positive.
struct Hyperplane {
  int alpha = 0;
  std::int64_t n = 0;
  bool operator==(const Hyperplane& o) const { return alpha == o.alpha && n == o.n; }
  bool operator<(const Hyperplane& o) const { return alpha != o.alpha ? alpha < o.alpha : n < o.n; }
};

struct Affine {
  QMat M;
  QVec b;
  QVec operator()(const QVec& x) const { return M * x + b; }
  // (this ∘ other)(x) = this(other(x))
  Affine after(const Affine& other) const { return {M * other.M, M * other.b + b}; }
  Affine inverse() const;
  static Affine identity(int dim);
  bool operator==(const Affine& o) const { return M == o.M && b == o.b; }
};

// Image of a hyperplane under an affine map whose linear part is orthogonal and permutes roots.
Hyperplane transform(const RootSystem& R, const Affine& g, const Hyperplane& h);

// Affine Weyl group realized on the alcove geometry of a root system.
struct AffineSystem {
  RootSystem R;
  std::string label;                       // e.g. "C2"
  std::vector<std::string> gen_names;      // generator order t < s1 < ... < t'
  std::vector<Hyperplane> walls;           // wall of A0 of each generator type
  std::vector<Affine> reflections;
  std::vector<std::vector<int>> coxeter;   // m(s,s'); 0 encodes infinity
  std::vector<int> class_of;               // generator -> conjugacy class
  std::vector<std::string> class_names;
  std::vector<QVec> a0_vertices;           // vertex opposite to each wall
  QVec a0_center;
  std::vector<std::int64_t> coroot_gcd;    // per positive root, gcd of (Q^vee, alpha)

  int num_gens() const { return static_cast<int>(gen_names.size()); }
  int num_classes() const { return static_cast<int>(class_names.size()); }
  int gen_index(const std::string& name) const;
  int class_index(const std::string& name) const;
  // Generator type of faces supported by h (unique up to conjugacy).
  int generator_of(const Hyperplane& h) const;
  int class_of_hyperplane(const Hyperplane& h) const { return class_of[generator_of(h)]; }
  // Affine reflection in a hyperplane.
  Affine reflection(const Hyperplane& h) const;
  // Does the family use the B/F/G (s,t) or C (t,s,t') class layout.
  bool is_C() const { return R.family == Family::C; }
};

AffineSystem make_affine(Family f, int rank);
AffineSystem make_affine(const std::string& label);  // "C2", "G2", "B3", "F4", "A3"

}  // namespace ac
