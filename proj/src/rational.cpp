#include "ac/rational.hpp"

#include <sstream>

namespace ac {

namespace {

// Row-reduce [A | b] in place, returning pivot columns.
std::vector<int> row_reduce(QMat& A, QVec* b) {
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < A.cols() && row < A.rows(); ++col) {
    Eigen::Index p = row;
    while (p < A.rows() && A(p, col) == Q(0)) ++p;
    if (p == A.rows()) continue;
    A.row(p).swap(A.row(row));
    if (b) std::swap((*b)(p), (*b)(row));
    Q inv = Q(1) / A(row, col);
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(row, j) *= inv;
    if (b) (*b)(row) *= inv;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      if (i == row || A(i, col) == Q(0)) continue;
      Q f = A(i, col);
      for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) -= f * A(row, j);
      if (b) (*b)(i) -= f * (*b)(row);
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<QVec> solve_exact(QMat A, QVec b) {
  auto pivots = row_reduce(A, &b);
  if (static_cast<Eigen::Index>(pivots.size()) != A.cols()) return std::nullopt;
  for (Eigen::Index i = static_cast<Eigen::Index>(pivots.size()); i < A.rows(); ++i)
    if (b(i) != Q(0)) return std::nullopt;
  QVec x(A.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x(pivots[k]) = b(static_cast<Eigen::Index>(k));
  return x;
}

int rank_exact(QMat A) { return static_cast<int>(row_reduce(A, nullptr).size()); }

std::string to_string(const Q& x) {
  std::ostringstream os;
  os << x.numerator();
  if (x.denominator() != 1) os << "/" << x.denominator();
  return os.str();
}

std::string to_string(const QVec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v(i));
  }
  return s + ")";
}

QVec qvec(std::initializer_list<Q> xs) {
  QVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

}  // namespace ac
