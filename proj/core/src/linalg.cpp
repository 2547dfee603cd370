#include "coxcc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coxcc {

RankInfo numerical_rank(const Matrix& m, double rel_threshold) {
  RankInfo info;
  if (m.size() == 0) return info;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  info.largest = s.size() ? s(0) : 0.0;
  const double cut = rel_threshold * std::max(info.largest, std::numeric_limits<double>::min());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cut && info.largest > 0) {
      ++info.rank;
      info.smallest_kept = s(k);
    } else if (info.largest_dropped == 0.0) {
      info.largest_dropped = s(k);
    }
  }
  info.gap = info.largest_dropped > 0 ? info.smallest_kept / info.largest_dropped
                                      : std::numeric_limits<double>::infinity();
  return info;
}

Matrix column_space(const Matrix& m, double rel_threshold) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const int r = numerical_rank(m, rel_threshold).rank;
  return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& m, int cols, double rel_threshold) {
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const int r = numerical_rank(m, rel_threshold).rank;
  return svd.matrixV().rightCols(cols - r);
}

Matrix orthogonal_complement(const Matrix& basis, int n) {
  if (basis.cols() == 0) return Matrix::Identity(n, n);
  return null_space(basis.transpose(), n);
}

Matrix intersect_spaces(const Matrix& a, const Matrix& b, int n) {
  if (a.cols() == 0 || b.cols() == 0) return Matrix(n, 0);
  Matrix stacked(n, a.cols() + b.cols());
  stacked << a, -b;
  Matrix ker = null_space(stacked, static_cast<int>(stacked.cols()));
  if (ker.cols() == 0) return Matrix(n, 0);
  return column_space(a * ker.topRows(a.cols()));
}

Matrix relative_complement(const Matrix& big, const Matrix& small) {
  const auto n = big.rows();
  if (big.cols() == 0) return Matrix(n, 0);
  Matrix p = big;
  if (small.cols() > 0) p -= small * (small.transpose() * big);
  return column_space(p);
}

std::vector<int> pivot_rows(const Matrix& m, int count, std::vector<double>* pivots) {
  Matrix w = m;
  std::vector<int> rows(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) rows[static_cast<std::size_t>(i)] = i;
  std::vector<bool> col_used(static_cast<std::size_t>(m.cols()), false);
  std::vector<int> chosen;
  const int steps = std::min<int>(count, static_cast<int>(std::min(m.rows(), m.cols())));
  for (int k = 0; k < steps; ++k) {
    double best = -1.0;
    int bi = k, bj = 0;
    for (int i = k; i < w.rows(); ++i)
      for (int j = 0; j < w.cols(); ++j) {
        if (col_used[static_cast<std::size_t>(j)]) continue;
        if (std::abs(w(i, j)) > best) {
          best = std::abs(w(i, j));
          bi = i;
          bj = j;
        }
      }
    w.row(k).swap(w.row(bi));
    std::swap(rows[static_cast<std::size_t>(k)], rows[static_cast<std::size_t>(bi)]);
    col_used[static_cast<std::size_t>(bj)] = true;
    if (pivots) pivots->push_back(best);
    chosen.push_back(rows[static_cast<std::size_t>(k)]);
    if (best == 0.0) continue;
    for (int i = k + 1; i < w.rows(); ++i) {
      const double f = w(i, bj) / w(k, bj);
      w.row(i) -= f * w.row(k);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Vector balance(const Matrix& m) {
  const auto n = m.rows();
  Vector d = Vector::Ones(n);
  Matrix b = m;
  constexpr double radix = 2.0;
  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0, r = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(b(j, i));
        r += std::abs(b(i, j));
      }
      if (c == 0 || r == 0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / radix) { f *= radix; c *= radix * radix; }
      while (c > r * radix) { f /= radix; c /= radix * radix; }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        d(i) *= f;
        b.col(i) *= f;
        b.row(i) /= f;
      }
    }
  }
  return d;
}

double inf_norm(const Matrix& m) {
  return m.size() ? m.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
}

Matrix matrix_power(const Matrix& m, int k) {
  Matrix result = Matrix::Identity(m.rows(), m.cols());
  Matrix base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

}  // namespace coxcc
