#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coxcc/coxeter.hpp"
#include "coxcc/linalg.hpp"

namespace coxcc {

// Absolute tolerance on the product identities A_ij A_ji = 4cos^2(pi/m).
inline constexpr double kProductTolerance = 1e-9;

// An N x N real matrix paired with the Coxeter presentation it is meant for.
// Construction only checks shapes; compatibility is reported by validate().
class CartanMatrix {
 public:
  CartanMatrix() = default;
  CartanMatrix(CoxeterMatrix w, Matrix a);

  int rank() const { return w_.rank(); }
  const CoxeterMatrix& coxeter() const { return w_; }
  const Matrix& entries() const { return a_; }
  double operator()(int i, int j) const { return a_(i, j); }

 private:
  CoxeterMatrix w_;
  Matrix a_;
};

enum class Clause {
  Diagonal,         // A_ii = 2
  ZeroPattern,      // A_ij = 0 iff m_ij = 2
  Sign,             // A_ij < 0 when m_ij != 2
  Product,          // A_ij A_ji = 4cos^2(pi/m) for finite m >= 3
  InfinityProduct,  // A_ij A_ji >= 4 for m = inf (full level only)
};

std::string to_string(Clause c);

struct Violation {
  Clause clause;
  int i = 0;  // 0-based
  int j = 0;
  double value = 0.0;
  std::string message() const;
};

enum class CompatLevel { Weak, Full };

std::vector<Violation> validate(const CartanMatrix& a, CompatLevel level = CompatLevel::Full);
inline bool is_compatible(const CartanMatrix& a, CompatLevel level = CompatLevel::Full) {
  return validate(a, level).empty();
}

enum class MatrixType { Positive, Zero, Negative };
std::string to_string(MatrixType t);

struct TypeReport {
  double lowest_eigenvalue = 0.0;
  Vector pf_vector;        // unit l1-norm, all entries > 0
  MatrixType type = MatrixType::Positive;
  double tolerance_used = 0.0;
  double residual = 0.0;   // ||(2I - A) t - rho t||_inf
  double dense_lowest = 0.0;  // min real part from a dense eigensolve
};

// Zero-type band: |lambda_min| <= kTypeTolerance * max(1, ||A||_inf).
inline constexpr double kTypeTolerance = 1e-8;

// Requires the induced diagram to be connected (PreconditionError otherwise).
TypeReport matrix_type(const CartanMatrix& a);
// Same computation on a bare matrix whose off-diagonal entries are <= 0 and
// whose zero pattern is symmetric and irreducible.
TypeReport matrix_type(const Matrix& a);

// Canonical representative under positive diagonal conjugation (per component).
CartanMatrix normalize(const CartanMatrix& a);
// d with normalize(a) = diag(d) * A * diag(d)^-1.
Vector normalizing_diagonal(const CartanMatrix& a);
CartanMatrix conjugate_by_diagonal(const CartanMatrix& a, const Vector& d);

struct EquivalenceInvariants {
  std::map<std::pair<int, int>, double> pair_products;        // diagram edges, i < j
  std::map<std::vector<int>, double> cycle_products;          // fundamental cycles
};

EquivalenceInvariants equivalence_invariants(const CartanMatrix& a);
// prod A[c_k][c_k+1] / prod A[c_k+1][c_k] around the closed cycle c.
double cycle_product(const Matrix& a, const std::vector<int>& cycle);

bool is_symmetrizable(const CartanMatrix& a, double tol = 1e-9);
CartanMatrix submatrix(const CartanMatrix& a, VertexSet s);

CartanMatrix tits_cartan(const CoxeterMatrix& w);
// lambda keyed by 0-based (i, j), i < j, exactly the pairs with m = inf.
using LambdaMap = std::map<std::pair<int, int>, double>;
CartanMatrix deformed_tits_cartan(const CoxeterMatrix& w, const LambdaMap& lambda);
// Needs irreducible infinite W with (IC) failing and (~A) holding.
CartanMatrix generic_cc_cartan(const CoxeterMatrix& w);
inline constexpr double kGenericInfinityEntry = -2.5;
CartanMatrix affine_atilde_cartan(int n, double a);

}  // namespace coxcc
