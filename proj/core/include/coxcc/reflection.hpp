#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "coxcc/cartan.hpp"
#include "coxcc/linalg.hpp"

namespace coxcc {

using Word = std::vector<int>;  // 0-based generator indices, left to right

// Reflections rho(s_i) = I - v_i alpha_i^T on R^n.
class ReflectionRep {
 public:
  ReflectionRep() = default;
  // alpha: N x n (row i is the covector alpha_i); v: n x N (column j is v_j).
  ReflectionRep(Matrix alpha, Matrix v);
  // Takes generator matrices as given, so corrupted data can be verified.
  ReflectionRep(Matrix alpha, Matrix v, std::vector<Matrix> generators);

  int dim() const { return static_cast<int>(v_.rows()); }
  int rank() const { return static_cast<int>(alpha_.rows()); }
  const Matrix& alpha() const { return alpha_; }
  const Matrix& v() const { return v_; }
  const std::vector<Matrix>& generators() const { return gens_; }
  const Matrix& generator(int i) const { return gens_[static_cast<std::size_t>(i)]; }

  Matrix cartan() const { return alpha_ * v_; }
  Matrix element(std::span<const int> word) const;
  Matrix element(std::initializer_list<int> word) const {
    return element(std::span<const int>(word.begin(), word.size()));
  }

 private:
  Matrix alpha_;
  Matrix v_;
  std::vector<Matrix> gens_;
};

struct BuildInfo {
  int rank = 0;
  std::vector<int> basis_rows;   // rows of A used as the alpha basis
  std::vector<double> pivots;
  double pivot_gap = 0.0;        // smallest kept / largest dropped singular value
};

// Semisimple model of A on R^n (n >= rank A). Rejects zero-type components
// with NumericalError("non-semisimple required"), and rank(A) > n with
// PreconditionError.
ReflectionRep build_rep(const CartanMatrix& a, int n, BuildInfo* info = nullptr);

enum class InteriorStatus { Certified, Failed, Undetermined };
std::string to_string(InteriorStatus s);

struct RelationFailure {
  int i = 0;
  int j = 0;
  int m = 0;       // 1 for the involution check
  double error = 0.0;
};

struct VerifyReport {
  double involution_error = 0.0;
  double relation_error = 0.0;
  double cartan_error = 0.0;
  double reflection_error = 0.0;  // generators vs I - v_i alpha_i^T
  std::vector<RelationFailure> failures;
  InteriorStatus interior = InteriorStatus::Undetermined;
  std::optional<Vector> interior_point;
  bool involutions_ok = false;
  bool relations_ok = false;
  bool cartan_ok = false;
  bool ok() const {
    return involutions_ok && relations_ok && cartan_ok && interior != InteriorStatus::Failed;
  }
};

inline constexpr double kInvolutionTolerance = 1e-9;
inline constexpr double kRelationTolerance = 1e-6;
inline constexpr double kCartanTolerance = 1e-9;

// Checks rho(s_i)^2, (rho(s_i) rho(s_j))^m, the Cartan recovery against A,
// and the interior certificate of the fundamental cone.
VerifyReport verify_rep(const ReflectionRep& rep, const CartanMatrix& a);

struct SubspaceReport {
  Matrix v_basis;      // n x dim V_v, orthonormal
  Matrix alpha_basis;  // n x dim V_alpha, orthonormal
  int rank_a = 0;
  bool reduced = false;
  bool dual_reduced = false;
};

SubspaceReport subspace_report(const ReflectionRep& rep);

struct BlockDecomposition {
  // Basis blocks in the order U'', V_alpha ∩ V_v, U', U'''.
  Matrix u2, cap, u1, u3;
  Matrix basis;  // [u2 cap u1 u3], n x n
  std::vector<Matrix> adapted;  // basis^-1 rho(s_i) basis
  ReflectionRep rho_v;          // on V_v
  ReflectionRep rho_alpha;      // on V / V_alpha
  ReflectionRep rho_v_alpha;    // on V_v / (V_alpha ∩ V_v)
  double max_zero_block = 0.0;  // largest entry in a block that must vanish
  int block_size(int k) const;  // k in 0..3
};

BlockDecomposition block_decomposition(const ReflectionRep& rep);

struct AtildeModel {
  ReflectionRep rep;
  Matrix zigzag;
  Word zigzag_word;
};

// Explicit basis where the zigzag element is Diag(1/a, 1, ..., 1, a).
AtildeModel atilde_model(int n, double a);

struct ProximalData {
  double t = 0.0;
  Matrix m;               // rho(s1 s2) in the basis (v1, v2)
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  Vector x_plus;          // coordinates in (v1, v2)
  Vector x_minus;
};

struct UnipotentRegime {
  double t = 0.0;
  Matrix m;
};

std::variant<ProximalData, UnipotentRegime> n2_proximal(const CartanMatrix& a);

}  // namespace coxcc
