#include "ac/root_system.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace ac {

Family family_from_char(char c) {
  switch (c) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'F': return Family::F;
    case 'G': return Family::G;
  }
  throw std::invalid_argument(std::string("unknown type ") + c);
}

char family_char(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::F: return 'F';
    case Family::G: return 'G';
  }
  return '?';
}

std::vector<std::int64_t> qkey(const QVec& v) {
  std::vector<std::int64_t> k;
  k.reserve(static_cast<std::size_t>(2 * v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    k.push_back(v(i).numerator());
    k.push_back(v(i).denominator());
  }
  return k;
}

int RootSystem::find(const QVec& v) const {
  auto it = index.find(qkey(v));
  if (it != index.end()) return it->second;
  it = index.find(qkey(QVec(-v)));
  if (it != index.end()) return -(it->second + 2);
  return -1;
}

QVec RootSystem::coroot(int i) const { return positive[i] * (Q(2) / norm2(i)); }

QVec RootSystem::simple_coords(const QVec& v) const {
  QMat A(dim, rank);
  for (int j = 0; j < rank; ++j) A.col(j) = positive[simple[j]];
  auto c = solve_exact(A, v);
  if (!c) throw std::logic_error("vector not in the root span");
  return *c;
}

RootSystem root_system_from_simple(Family f, const std::vector<QVec>& simple, int dim,
                                   std::vector<QVec> complement) {
  RootSystem R;
  R.family = f;
  R.rank = static_cast<int>(simple.size());
  R.dim = dim;
  R.complement = std::move(complement);

  std::vector<QVec> roots;
  std::map<std::vector<std::int64_t>, int> seen;
  auto add = [&](const QVec& r) {
    auto k = qkey(r);
    if (seen.count(k)) return false;
    seen[k] = static_cast<int>(roots.size());
    roots.push_back(r);
    return true;
  };
  for (const auto& a : simple) add(a);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (const auto& a : simple) {
      QVec av = a * (Q(2) / dot(a, a));
      QVec r = roots[i] - av * dot(roots[i], a);
      add(r);
    }
  }

  // rho with (rho, alpha_i) = 1 on simple roots decides positivity.
  QMat A(R.rank + static_cast<int>(R.complement.size()), dim);
  QVec rhs(A.rows());
  for (int i = 0; i < R.rank; ++i) {
    A.row(i) = simple[i].transpose();
    rhs(i) = Q(1);
  }
  for (std::size_t c = 0; c < R.complement.size(); ++c) {
    A.row(R.rank + static_cast<int>(c)) = R.complement[c].transpose();
    rhs(R.rank + static_cast<int>(c)) = Q(0);
  }
  auto rho = solve_exact(A, rhs);
  if (!rho) throw std::logic_error("simple roots are not independent");

  for (const auto& r : roots)
    if (dot(r, *rho) > Q(0)) R.positive.push_back(r);
  std::stable_sort(R.positive.begin(), R.positive.end(), [&](const QVec& a, const QVec& b) {
    return dot(a, *rho) < dot(b, *rho);
  });
  for (int i = 0; i < R.num_positive(); ++i) R.index[qkey(R.positive[i])] = i;
  for (const auto& a : simple) R.simple.push_back(R.index.at(qkey(a)));
  R.highest = R.num_positive() - 1;
  return R;
}

RootSystem build_root_system(Family f, int n) {
  auto e = [](int dim, int i) {
    QVec v = QVec::Constant(dim, Q(0));
    v(i) = Q(1);
    return v;
  };
  std::vector<QVec> simple;
  switch (f) {
    case Family::A: {
      if (n < 1) throw std::invalid_argument("A_n needs n >= 1");
      for (int i = 0; i < n; ++i) simple.push_back(e(n + 1, i) - e(n + 1, i + 1));
      return root_system_from_simple(f, simple, n + 1, {QVec::Constant(n + 1, Q(1))});
    }
    case Family::B: {
      if (n < 3) throw std::invalid_argument("B_n needs n >= 3");
      for (int i = 0; i + 1 < n; ++i) simple.push_back(e(n, i) - e(n, i + 1));
      simple.push_back(e(n, n - 1));
      return root_system_from_simple(f, simple, n, {});
    }
    case Family::C: {
      if (n < 1) throw std::invalid_argument("C_n needs n >= 1");
      for (int i = 0; i + 1 < n; ++i) simple.push_back(e(n, i) - e(n, i + 1));
      simple.push_back(e(n, n - 1) * Q(2));
      return root_system_from_simple(f, simple, n, {});
    }
    case Family::F: {
      if (n != 4) throw std::invalid_argument("F_n needs n = 4");
      simple.push_back(e(4, 1) - e(4, 2));
      simple.push_back(e(4, 2) - e(4, 3));
      simple.push_back(e(4, 3));
      simple.push_back((e(4, 0) - e(4, 1) - e(4, 2) - e(4, 3)) * Q(1, 2));
      return root_system_from_simple(f, simple, 4, {});
    }
    case Family::G: {
      if (n != 2) throw std::invalid_argument("G_n needs n = 2");
      simple.push_back(e(3, 0) - e(3, 1));
      simple.push_back(e(3, 1) + e(3, 2) - e(3, 0) * Q(2));
      return root_system_from_simple(f, simple, 3, {QVec::Constant(3, Q(1))});
    }
  }
  throw std::invalid_argument("unsupported root system");
}

Affine Affine::identity(int dim) { return {QMat::Identity(dim, dim), QVec::Constant(dim, Q(0))}; }

Affine Affine::inverse() const {
  QMat Mt = M.transpose();
  return {Mt, -(Mt * b)};
}

Hyperplane transform(const RootSystem& R, const Affine& g, const Hyperplane& h) {
  QVec beta = g.M * R.positive[h.alpha];
  Q m = Q(h.n) + dot(g.b, beta);
  if (!is_integer(m)) throw std::logic_error("hyperplane image is not integral");
  int idx = R.find(beta);
  if (idx >= 0) return {idx, m.numerator()};
  if (idx == -1) throw std::logic_error("linear part does not permute roots");
  return {-(idx + 2), -m.numerator()};
}

int AffineSystem::gen_index(const std::string& name) const {
  for (int i = 0; i < num_gens(); ++i)
    if (gen_names[i] == name) return i;
  return -1;
}

int AffineSystem::class_index(const std::string& name) const {
  for (int i = 0; i < num_classes(); ++i)
    if (class_names[i] == name) return i;
  return -1;
}

int AffineSystem::generator_of(const Hyperplane& h) const {
  std::int64_t g = coroot_gcd[h.alpha];
  for (int s = 0; s < num_gens(); ++s) {
    const Hyperplane& w = walls[s];
    if (!R.same_length(w.alpha, h.alpha)) continue;
    std::int64_t d = h.n - w.n;
    if (((d % g) + g) % g == 0) return s;
  }
  throw std::logic_error("hyperplane has no generator type");
}

Affine AffineSystem::reflection(const Hyperplane& h) const {
  const QVec& a = R.positive[h.alpha];
  QVec av = R.coroot(h.alpha);
  QMat M = QMat::Identity(R.dim, R.dim) - av * a.transpose();
  return {M, av * Q(h.n)};
}

namespace {

int coxeter_m(const RootSystem& R, const Hyperplane& a, const Hyperplane& b) {
  Q ip = dot(R.positive[a.alpha], R.positive[b.alpha]);
  Q c2 = ip * ip / (R.norm2(a.alpha) * R.norm2(b.alpha));
  if (c2 == Q(0)) return 2;
  if (c2 == Q(1, 4)) return 3;
  if (c2 == Q(1, 2)) return 4;
  if (c2 == Q(3, 4)) return 6;
  if (c2 == Q(1)) return 0;
  throw std::logic_error("walls meet at a non-crystallographic angle");
}

std::string class_name_of(const std::string& gen) {
  if (gen == "t'") return "t'";
  return std::string(1, gen[0]);
}

}  // namespace

AffineSystem make_affine(Family f, int n) {
  AffineSystem S;
  if (f == Family::A && n == 1) f = Family::C;
  S.R = build_root_system(f, n);
  S.label = std::string(1, family_char(f)) + std::to_string(n);
  const RootSystem& R = S.R;
  auto e = [&](int i) {
    QVec v = QVec::Constant(R.dim, Q(0));
    v(i) = Q(1);
    return v;
  };
  auto root = [&](const QVec& v) {
    int i = R.find(v);
    if (i < 0) throw std::logic_error("expected a positive root");
    return i;
  };
  auto add = [&](const std::string& name, int alpha, std::int64_t m) {
    S.gen_names.push_back(name);
    S.walls.push_back({alpha, m});
  };
  switch (f) {
    case Family::C:
      add("t", root(e(n - 1) * Q(2)), 0);
      for (int i = 1; i < n; ++i) add(n == 2 ? "s" : "s" + std::to_string(i), root(e(n - 1 - i) - e(n - i)), 0);
      add("t'", root(e(0) * Q(2)), 1);
      break;
    case Family::B:
      add("t", root(e(n - 1)), 0);
      for (int i = 1; i < n; ++i) add("s" + std::to_string(i), root(e(n - 1 - i) - e(n - i)), 0);
      add("s" + std::to_string(n), root(e(0) + e(1)), 1);
      break;
    case Family::F:
      add("t1", root(e(2) - e(3)), 0);
      add("t2", root(e(1) - e(2)), 0);
      add("t3", root(e(0) + e(1)), 1);
      add("s1", root(e(3)), 0);
      add("s2", root((e(0) - e(1) - e(2) - e(3)) * Q(1, 2)), 0);
      break;
    case Family::G:
      add("t", R.simple[0], 0);
      add("s1", R.simple[1], 0);
      add("s2", R.highest, 1);
      break;
    case Family::A:
      add("s0", R.highest, 1);
      for (int i = 1; i <= n; ++i) add("s" + std::to_string(i), R.simple[i - 1], 0);
      break;
  }

  int k = S.num_gens();
  S.coxeter.assign(k, std::vector<int>(k, 1));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b) S.coxeter[a][b] = coxeter_m(R, S.walls[a], S.walls[b]);

  // Conjugacy classes from odd bonds; names must agree with the class letters.
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root_of = [&](int x) { return parent[x] == x ? x : parent[x] = root_of(parent[x]); };
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b && S.coxeter[a][b] % 2 == 1) parent[root_of(a)] = root_of(b);

  std::vector<std::string> order;
  if (f == Family::C) order = n >= 2 ? std::vector<std::string>{"t", "s", "t'"} : std::vector<std::string>{"t", "t'"};
  else if (f == Family::A) order = {"s"};
  else order = {"s", "t"};
  S.class_names = order;
  S.class_of.resize(k);
  for (int a = 0; a < k; ++a) S.class_of[a] = S.class_index(class_name_of(S.gen_names[a]));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if ((root_of(a) == root_of(b)) != (S.class_of[a] == S.class_of[b]))
        throw std::logic_error("generator names disagree with conjugacy classes");

  for (const auto& w : S.walls) S.reflections.push_back(S.reflection(w));

  // Vertices of A0: the point on all walls but one.
  S.a0_center = QVec::Constant(R.dim, Q(0));
  for (int omit = 0; omit < k; ++omit) {
    QMat A(k - 1 + static_cast<int>(R.complement.size()), R.dim);
    QVec rhs(A.rows());
    int row = 0;
    for (int j = 0; j < k; ++j) {
      if (j == omit) continue;
      A.row(row) = R.positive[S.walls[j].alpha].transpose();
      rhs(row++) = Q(S.walls[j].n);
    }
    for (const auto& c : R.complement) {
      A.row(row) = c.transpose();
      rhs(row++) = Q(0);
    }
    auto v = solve_exact(A, rhs);
    if (!v) throw std::logic_error("degenerate fundamental alcove");
    S.a0_vertices.push_back(*v);
    S.a0_center += *v;
  }
  S.a0_center /= Q(k);

  for (int i = 0; i < R.num_positive(); ++i) {
    std::int64_t g = 0;
    for (int s : R.simple) {
      Q p = dot(R.coroot(s), R.positive[i]);
      g = std::gcd(g, std::abs(p.numerator()));
    }
    S.coroot_gcd.push_back(g);
  }
  return S;
}

AffineSystem make_affine(const std::string& label) {
  if (label.size() < 2) throw std::invalid_argument("bad group label " + label);
  return make_affine(family_from_char(label[0]), std::stoi(label.substr(1)));
}

}  // namespace ac
