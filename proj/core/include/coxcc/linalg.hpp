#pragma once

#include <Eigen/Dense>
#include <vector>

namespace coxcc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Singular values below rel_threshold * largest are treated as zero.
inline constexpr double kRankThreshold = 1e-9;

struct RankInfo {
  int rank = 0;
  double largest = 0.0;
  // Smallest kept and largest dropped singular value (0 when none).
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;
  // smallest_kept / largest_dropped, infinity when nothing was dropped.
  double gap = 0.0;
};

RankInfo numerical_rank(const Matrix& m, double rel_threshold = kRankThreshold);

// Orthonormal basis (columns) of the column space of `m`.
Matrix column_space(const Matrix& m, double rel_threshold = kRankThreshold);
// Orthonormal basis (columns) of the right null space of `m`, i.e. {x : m x = 0}.
Matrix null_space(const Matrix& m, int cols, double rel_threshold = kRankThreshold);
// Orthonormal basis of the orthogonal complement of span(basis) in R^n.
Matrix orthogonal_complement(const Matrix& basis, int n);
// Orthonormal basis of span(a) ∩ span(b); inputs need orthonormal columns.
Matrix intersect_spaces(const Matrix& a, const Matrix& b, int n);
// Orthonormal basis of the part of span(big) orthogonal to span(small).
Matrix relative_complement(const Matrix& big, const Matrix& small);

// Rows chosen by Gaussian elimination with complete pivoting, `count` steps,
// returned in ascending order. `pivots` receives the pivot magnitudes.
std::vector<int> pivot_rows(const Matrix& m, int count, std::vector<double>* pivots = nullptr);

// Diagonal similarity that equalizes row and column norms (Parlett-Reinsch).
// Returns d with balanced = diag(d)^-1 * m * diag(d).
Vector balance(const Matrix& m);

double inf_norm(const Matrix& m);

// m^k by repeated squaring, k >= 0.
Matrix matrix_power(const Matrix& m, int k);

}  // namespace coxcc
