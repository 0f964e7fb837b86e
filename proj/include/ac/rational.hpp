#pragma once

#include <boost/rational.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ac {

using Q = boost::rational<std::int64_t>;

}  // namespace ac

namespace Eigen {
template <>
struct NumTraits<ac::Q> : GenericNumTraits<ac::Q> {
  typedef ac::Q Real;
  typedef ac::Q NonInteger;
  typedef ac::Q Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static ac::Q epsilon() { return ac::Q(0); }
  static ac::Q dummy_precision() { return ac::Q(0); }
  static int digits10() { return 0; }
};
}  // namespace Eigen

namespace ac {

using QVec = Eigen::Matrix<Q, Eigen::Dynamic, 1>;
using QMat = Eigen::Matrix<Q, Eigen::Dynamic, Eigen::Dynamic>;

inline std::int64_t floor_q(const Q& x) {
  std::int64_t n = x.numerator(), d = x.denominator();
  std::int64_t q = n / d;
  if ((n % d != 0) && (n < 0)) --q;
  return q;
}

inline bool is_integer(const Q& x) { return x.denominator() == 1; }

inline Q dot(const QVec& a, const QVec& b) {
  Q s(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

// Exact solve of A x = b for a square or overdetermined consistent system.
// Returns nullopt if inconsistent or not of full column rank.
std::optional<QVec> solve_exact(QMat A, QVec b);

// Rank of a rational matrix.
int rank_exact(QMat A);

std::string to_string(const Q& x);
std::string to_string(const QVec& v);

QVec qvec(std::initializer_list<Q> xs);

}  // namespace ac
