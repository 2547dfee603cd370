#include "coxcc/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "coxcc/errors.hpp"

namespace coxcc {

CartanMatrix::CartanMatrix(CoxeterMatrix w, Matrix a) : w_(std::move(w)), a_(std::move(a)) {
  if (a_.rows() != w_.rank() || a_.cols() != w_.rank())
    throw ValidationError("Cartan matrix is " + std::to_string(a_.rows()) + "x" +
                          std::to_string(a_.cols()) + " but the Coxeter matrix has rank " +
                          std::to_string(w_.rank()));
  if (!a_.allFinite()) throw ValidationError("Cartan matrix has non-finite entries");
}

std::string to_string(Clause c) {
  switch (c) {
    case Clause::Diagonal: return "diagonal";
    case Clause::ZeroPattern: return "zero-pattern";
    case Clause::Sign: return "sign";
    case Clause::Product: return "product";
    case Clause::InfinityProduct: return "infinity-product";
  }
  return "?";
}

std::string Violation::message() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(clause) << " clause violated at (" << i + 1 << "," << j + 1 << "): ";
  switch (clause) {
    case Clause::Diagonal: os << "A_ii = " << value << ", expected 2"; break;
    case Clause::ZeroPattern: os << "entry " << value << " breaks A_ij = 0 iff m_ij = 2"; break;
    case Clause::Sign: os << "entry " << value << " should be negative"; break;
    case Clause::Product: os << "product " << value << " != 4cos^2(pi/m)"; break;
    case Clause::InfinityProduct: os << "product " << value << " < 4 on an inf pair"; break;
  }
  return os.str();
}

std::string to_string(MatrixType t) {
  switch (t) {
    case MatrixType::Positive: return "positive";
    case MatrixType::Zero: return "zero";
    case MatrixType::Negative: return "negative";
  }
  return "?";
}

namespace {

// 4cos^2(pi/m), exact where the value is an integer.
double four_cos2(int m) {
  switch (m) {
    case 2: return 0.0;
    case 3: return 1.0;
    case 4: return 2.0;
    case 6: return 3.0;
    default: {
      double c = std::cos(std::numbers::pi / m);
      return 4.0 * c * c;
    }
  }
}

double tits_entry(int m) {
  if (m == kInfinity) return -2.0;
  return -std::sqrt(four_cos2(m));
}

}  // namespace

std::vector<Violation> validate(const CartanMatrix& a, CompatLevel level) {
  std::vector<Violation> out;
  const auto& w = a.coxeter();
  const int n = a.rank();
  for (int i = 0; i < n; ++i)
    if (std::abs(a(i, i) - 2.0) > kProductTolerance) out.push_back({Clause::Diagonal, i, i, a(i, i)});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int m = w(i, j);
      const double x = a(i, j);
      if (m == 2) {
        if (x != 0.0) out.push_back({Clause::ZeroPattern, i, j, x});
        continue;
      }
      if (x == 0.0) out.push_back({Clause::ZeroPattern, i, j, x});
      else if (x > 0.0) out.push_back({Clause::Sign, i, j, x});
      if (j < i) continue;
      const double p = x * a(j, i);
      if (m != kInfinity) {
        if (std::abs(p - four_cos2(m)) > kProductTolerance) out.push_back({Clause::Product, i, j, p});
      } else if (level == CompatLevel::Full && p < 4.0 - kProductTolerance) {
        out.push_back({Clause::InfinityProduct, i, j, p});
      }
    }
  return out;
}

// ---------------------------------------------------------------------------

TypeReport matrix_type(const Matrix& a) {
  const auto n = a.rows();
  TypeReport rep;
  rep.tolerance_used = kTypeTolerance * std::max(1.0, inf_norm(a));
  if (n == 1) {
    rep.lowest_eigenvalue = rep.dense_lowest = a(0, 0);
    rep.pf_vector = Vector::Ones(1);
  } else {
    const Matrix b = 2.0 * Matrix::Identity(n, n) - a;
    const Vector d = balance(b);
    const Matrix bb = d.cwiseInverse().asDiagonal() * b * d.asDiagonal();

    Eigen::EigenSolver<Matrix> es(bb, true);
    Eigen::Index top = 0;
    for (Eigen::Index k = 1; k < n; ++k)
      if (es.eigenvalues()(k).real() > es.eigenvalues()(top).real()) top = k;
    rep.dense_lowest = 2.0 - es.eigenvalues()(top).real();

    Vector t = es.eigenvectors().col(top).real();
    if (t.sum() < 0) t = -t;
    t = t.cwiseAbs();
    if (t.sum() == 0 || !t.allFinite()) t = Vector::Ones(n);
    t /= t.sum();

    // Power iteration on bb + I (primitive for irreducible nonnegative bb).
    const double scale = std::max(1.0, inf_norm(bb));
    const Matrix c = bb + Matrix::Identity(n, n);
    double rho = t.dot(bb * t) / t.squaredNorm();
    for (int it = 0; it < 200000; ++it) {
      Vector next = c * t;
      next /= next.sum();
      t = next;
      rho = t.dot(bb * t) / t.squaredNorm();
      if ((bb * t - rho * t).lpNorm<Eigen::Infinity>() <= 1e-12 * scale * t.lpNorm<Eigen::Infinity>())
        break;
    }
    Vector pf = d.asDiagonal() * t;
    pf /= pf.sum();
    rep.pf_vector = pf;
    rep.lowest_eigenvalue = 2.0 - rho;
    rep.residual = (b * pf - rho * pf).lpNorm<Eigen::Infinity>();
  }
  const double lam = rep.lowest_eigenvalue;
  if (std::abs(lam) <= rep.tolerance_used) rep.type = MatrixType::Zero;
  else rep.type = lam > 0 ? MatrixType::Positive : MatrixType::Negative;
  return rep;
}

TypeReport matrix_type(const CartanMatrix& a) {
  if (!a.coxeter().connected(a.coxeter().generators()))
    throw PreconditionError("matrix_type: the diagram is not connected");
  return matrix_type(a.entries());
}

// ---------------------------------------------------------------------------

namespace {

struct SpanningForest {
  std::vector<int> parent;  // -1 at roots
  std::vector<int> depth;
  std::vector<int> order;   // BFS order
};

SpanningForest bfs_forest(const CoxeterMatrix& w) {
  const int n = w.rank();
  SpanningForest f;
  f.parent.assign(static_cast<std::size_t>(n), -1);
  f.depth.assign(static_cast<std::size_t>(n), -1);
  for (int root = 0; root < n; ++root) {
    if (f.depth[static_cast<std::size_t>(root)] >= 0) continue;
    f.depth[static_cast<std::size_t>(root)] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int p = q.front();
      q.pop();
      f.order.push_back(p);
      for (int c : w.neighbors(p).members()) {
        if (f.depth[static_cast<std::size_t>(c)] >= 0) continue;
        f.depth[static_cast<std::size_t>(c)] = f.depth[static_cast<std::size_t>(p)] + 1;
        f.parent[static_cast<std::size_t>(c)] = p;
        q.push(c);
      }
    }
  }
  return f;
}

std::vector<int> canonical_cycle(std::vector<int> c) {
  auto it = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), it, c.end());
  if (c.size() > 2 && c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
  return c;
}

}  // namespace

Vector normalizing_diagonal(const CartanMatrix& a) {
  const auto f = bfs_forest(a.coxeter());
  Vector d = Vector::Ones(a.rank());
  for (int c : f.order) {
    int p = f.parent[static_cast<std::size_t>(c)];
    if (p < 0) continue;
    const double apc = a(p, c), acp = a(c, p);
    if (!(apc < 0 && acp < 0))
      throw ValidationError("normalize: tree edge (" + std::to_string(p + 1) + "," +
                            std::to_string(c + 1) + ") has non-negative entries");
    d(c) = d(p) * std::sqrt(apc / acp);
  }
  return d;
}

CartanMatrix conjugate_by_diagonal(const CartanMatrix& a, const Vector& d) {
  if (d.size() != a.rank() || (d.array() <= 0).any())
    throw PreconditionError("conjugate_by_diagonal: need a positive vector of length N");
  Matrix m = d.asDiagonal() * a.entries() * d.cwiseInverse().asDiagonal();
  for (int i = 0; i < a.rank(); ++i) m(i, i) = a(i, i);
  return CartanMatrix(a.coxeter(), m);
}

CartanMatrix normalize(const CartanMatrix& a) {
  CartanMatrix out = conjugate_by_diagonal(a, normalizing_diagonal(a));
  Matrix m = out.entries();
  // Tree edges are symmetric by construction; make that exact.
  const auto f = bfs_forest(a.coxeter());
  for (int c = 0; c < a.rank(); ++c) {
    int p = f.parent[static_cast<std::size_t>(c)];
    if (p < 0) continue;
    double g = -std::sqrt(a(p, c) * a(c, p));
    m(p, c) = m(c, p) = g;
  }
  return CartanMatrix(a.coxeter(), m);
}

double cycle_product(const Matrix& a, const std::vector<int>& c) {
  double num = 1.0, den = 1.0;
  const std::size_t len = c.size();
  for (std::size_t k = 0; k < len; ++k) {
    int i = c[k], j = c[(k + 1) % len];
    num *= a(i, j);
    den *= a(j, i);
  }
  return num / den;
}

EquivalenceInvariants equivalence_invariants(const CartanMatrix& a) {
  EquivalenceInvariants inv;
  const auto& w = a.coxeter();
  for (const auto& e : w.edges()) inv.pair_products[{e.i, e.j}] = a(e.i, e.j) * a(e.j, e.i);
  const auto f = bfs_forest(w);
  auto par = [&](int v) { return f.parent[static_cast<std::size_t>(v)]; };
  auto dep = [&](int v) { return f.depth[static_cast<std::size_t>(v)]; };
  for (const auto& e : w.edges()) {
    if (par(e.j) == e.i || par(e.i) == e.j) continue;
    std::vector<int> left{e.i}, right{e.j};
    int x = e.i, y = e.j;
    while (dep(x) > dep(y)) left.push_back(x = par(x));
    while (dep(y) > dep(x)) right.push_back(y = par(y));
    while (x != y) {
      left.push_back(x = par(x));
      right.push_back(y = par(y));
    }
    right.pop_back();  // the common ancestor is already in `left`
    std::vector<int> cyc = left;
    cyc.insert(cyc.end(), right.rbegin(), right.rend());
    cyc = canonical_cycle(cyc);
    inv.cycle_products[cyc] = cycle_product(a.entries(), cyc);
  }
  return inv;
}

bool is_symmetrizable(const CartanMatrix& a, double tol) {
  for (const auto& [cyc, r] : equivalence_invariants(a).cycle_products)
    if (std::abs(r - 1.0) > tol) return false;
  return true;
}

CartanMatrix submatrix(const CartanMatrix& a, VertexSet s) {
  auto idx = s.members();
  if (idx.empty()) throw PreconditionError("submatrix: empty subset");
  for (int i : idx)
    if (i >= a.rank()) throw PreconditionError("submatrix: index out of range");
  const auto k = static_cast<Eigen::Index>(idx.size());
  Matrix m(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c)
      m(r, c) = a(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
  return CartanMatrix(a.coxeter().restrict_to(s), m);
}

// ---------------------------------------------------------------------------

CartanMatrix tits_cartan(const CoxeterMatrix& w) {
  const int n = w.rank();
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 2.0;
    for (int j = 0; j < n; ++j)
      if (i != j) m(i, j) = w(i, j) == 2 ? 0.0 : tits_entry(w(i, j));
  }
  return CartanMatrix(w, m);
}

CartanMatrix deformed_tits_cartan(const CoxeterMatrix& w, const LambdaMap& lambda) {
  Matrix m = tits_cartan(w).entries();
  std::size_t used = 0;
  for (const auto& e : w.edges()) {
    if (e.m != kInfinity) continue;
    auto it = lambda.find({e.i, e.j});
    if (it == lambda.end())
      throw ValidationError("deformed_tits_cartan: missing lambda for pair (" +
                            std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) + ")");
    if (!(it->second >= 0.0) || !std::isfinite(it->second))
      throw ValidationError("deformed_tits_cartan: lambda must be a finite number >= 0");
    m(e.i, e.j) = m(e.j, e.i) = -(2.0 + it->second);
    ++used;
  }
  if (used != lambda.size())
    throw ValidationError("deformed_tits_cartan: lambda keys must be exactly the inf pairs");
  return CartanMatrix(w, m);
}

CartanMatrix generic_cc_cartan(const CoxeterMatrix& w) {
  if (!admits_cc_reflection_rep(w))
    throw PreconditionError("generic_cc_cartan: (IC) holds or (~A) fails for this group");
  Matrix m = tits_cartan(w).entries();
  std::vector<int> primes;
  auto next_prime = [&]() {
    int c = primes.empty() ? 2 : primes.back() + 1;
    for (;; ++c) {
      bool prime = true;
      for (int p : primes)
        if (c % p == 0) { prime = false; break; }
      if (prime) break;
    }
    primes.push_back(c);
    return c;
  };
  for (const auto& e : w.edges()) {
    if (e.m == 3) {
      const double t = next_prime();
      m(e.i, e.j) = -t;
      m(e.j, e.i) = -1.0 / t;
    } else if (e.m == kInfinity) {
      m(e.i, e.j) = m(e.j, e.i) = kGenericInfinityEntry;
    }
  }
  return CartanMatrix(w, m);
}

CartanMatrix affine_atilde_cartan(int n, double a) {
  if (n < 3) throw PreconditionError("affine_atilde_cartan: need N >= 3");
  if (!(a > 0) || !std::isfinite(a)) throw PreconditionError("affine_atilde_cartan: need a > 0");
  CoxeterMatrix w = make_diagram(Family::AffineA, n - 1);
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 2.0;
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = -1.0;
  }
  m(0, n - 1) = -a;
  m(n - 1, 0) = -1.0 / a;
  return CartanMatrix(w, m);
}

}  // namespace coxcc
