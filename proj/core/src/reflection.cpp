#include "coxcc/reflection.hpp"

#include <algorithm>
#include <cmath>

#include "coxcc/errors.hpp"

namespace coxcc {

namespace {

void check_shapes(const Matrix& alpha, const Matrix& v) {
  if (alpha.cols() != v.rows() || alpha.rows() != v.cols())
    throw ValidationError("reflection data: alpha is " + std::to_string(alpha.rows()) + "x" +
                          std::to_string(alpha.cols()) + " but v is " + std::to_string(v.rows()) +
                          "x" + std::to_string(v.cols()));
}

}  // namespace

ReflectionRep::ReflectionRep(Matrix alpha, Matrix v) : alpha_(std::move(alpha)), v_(std::move(v)) {
  check_shapes(alpha_, v_);
  const auto n = v_.rows();
  for (Eigen::Index i = 0; i < alpha_.rows(); ++i)
    gens_.push_back(Matrix::Identity(n, n) - v_.col(i) * alpha_.row(i));
}

ReflectionRep::ReflectionRep(Matrix alpha, Matrix v, std::vector<Matrix> generators)
    : alpha_(std::move(alpha)), v_(std::move(v)), gens_(std::move(generators)) {
  check_shapes(alpha_, v_);
  if (static_cast<Eigen::Index>(gens_.size()) != alpha_.rows())
    throw ValidationError("reflection data: expected one generator per row of alpha");
  for (const auto& g : gens_)
    if (g.rows() != v_.rows() || g.cols() != v_.rows())
      throw ValidationError("reflection data: generator has the wrong size");
}

Matrix ReflectionRep::element(std::span<const int> word) const {
  Matrix m = Matrix::Identity(dim(), dim());
  for (int i : word) {
    if (i < 0 || i >= rank()) throw PreconditionError("word letter out of range");
    m = m * gens_[static_cast<std::size_t>(i)];
  }
  return m;
}

std::string to_string(InteriorStatus s) {
  switch (s) {
    case InteriorStatus::Certified: return "certified";
    case InteriorStatus::Failed: return "failed";
    case InteriorStatus::Undetermined: return "undetermined";
  }
  return "?";
}

// ---------------------------------------------------------------------------

ReflectionRep build_rep(const CartanMatrix& a, int n, BuildInfo* info) {
  const Matrix& am = a.entries();
  const int nn = a.rank();
  for (const auto& c : irreducible_components(a.coxeter())) {
    if (matrix_type(submatrix(a, c.vertex_set())).type == MatrixType::Zero)
      throw NumericalError("non-semisimple required: component " + c.vertex_set().to_string() +
                           " has zero type, so no reflection-group model is semisimple");
  }
  const RankInfo ri = numerical_rank(am);
  const int r = ri.rank;
  if (r > n)
    throw PreconditionError("rank(A) = " + std::to_string(r) + " exceeds n = " + std::to_string(n));
  if (ri.largest_dropped > 1e-12 * ri.largest || ri.smallest_kept < 1e-6 * ri.largest)
    throw NumericalError("numerical rank of A is ambiguous (pivot gap " + std::to_string(ri.gap) +
                         ")");

  std::vector<double> pivots;
  const std::vector<int> rows = pivot_rows(am, r, &pivots);
  Matrix basis_rows(r, nn);
  for (int k = 0; k < r; ++k) basis_rows.row(k) = am.row(rows[static_cast<std::size_t>(k)]);

  Matrix alpha = Matrix::Zero(nn, n);
  const auto qr = basis_rows.transpose().colPivHouseholderQr();
  for (int i = 0; i < nn; ++i) {
    auto it = std::find(rows.begin(), rows.end(), i);
    if (it != rows.end()) {
      alpha(i, it - rows.begin()) = 1.0;
    } else {
      Vector c = qr.solve(Vector(am.row(i).transpose()));
      alpha.row(i).head(r) = c.transpose();
    }
  }
  Matrix v = Matrix::Zero(n, nn);
  v.topRows(r) = basis_rows;

  ReflectionRep rep(alpha, v);
  const double err = (rep.cartan() - am).cwiseAbs().maxCoeff();
  if (err > kCartanTolerance * std::max(1.0, inf_norm(am)))
    throw NumericalError("semisimple model does not recover A (error " + std::to_string(err) + ")");
  if (info) {
    info->rank = r;
    info->basis_rows = rows;
    info->pivots = pivots;
    info->pivot_gap = ri.gap;
  }
  return rep;
}

VerifyReport verify_rep(const ReflectionRep& rep, const CartanMatrix& a) {
  VerifyReport out;
  const auto& w = a.coxeter();
  const int nn = rep.rank();
  const auto n = rep.dim();
  if (nn != a.rank()) throw PreconditionError("verify_rep: rep and Cartan matrix sizes differ");
  const Matrix id = Matrix::Identity(n, n);

  for (int i = 0; i < nn; ++i) {
    const Matrix& g = rep.generator(i);
    const double e = (g * g - id).cwiseAbs().maxCoeff();
    out.involution_error = std::max(out.involution_error, e);
    if (e > kInvolutionTolerance) out.failures.push_back({i, i, 1, e});
    const Matrix refl = id - rep.v().col(i) * rep.alpha().row(i);
    out.reflection_error = std::max(out.reflection_error, (g - refl).cwiseAbs().maxCoeff());
  }
  out.involutions_ok = out.involution_error <= kInvolutionTolerance;

  for (int i = 0; i < nn; ++i)
    for (int j = i + 1; j < nn; ++j) {
      const int m = w(i, j);
      if (m == kInfinity) continue;
      const Matrix p = matrix_power(rep.generator(i) * rep.generator(j), m);
      const double e = (p - id).cwiseAbs().maxCoeff();
      out.relation_error = std::max(out.relation_error, e);
      if (e > kRelationTolerance) out.failures.push_back({i, j, m, e});
    }
  out.relations_ok = out.relation_error <= kRelationTolerance;

  out.cartan_error = (rep.cartan() - a.entries()).cwiseAbs().maxCoeff();
  out.cartan_ok = out.cartan_error <= kCartanTolerance * std::max(1.0, inf_norm(a.entries()));

  // Interior certificate from the Perron-Frobenius vectors of the components.
  Vector x = Vector::Zero(n);
  bool undetermined = false;
  for (const auto& c : irreducible_components(w)) {
    const VertexSet s = c.vertex_set();
    const TypeReport tr = matrix_type(submatrix(a, s));
    if (tr.type == MatrixType::Zero) {
      undetermined = true;
      break;
    }
    const double sign = tr.type == MatrixType::Negative ? 1.0 : -1.0;
    const auto idx = s.members();
    for (std::size_t k = 0; k < idx.size(); ++k)
      x += sign * tr.pf_vector(static_cast<Eigen::Index>(k)) * rep.v().col(idx[k]);
  }
  if (undetermined) {
    out.interior = InteriorStatus::Undetermined;
  } else {
    const Vector ax = rep.alpha() * x;
    out.interior = ax.maxCoeff() < 0.0 ? InteriorStatus::Certified : InteriorStatus::Failed;
    out.interior_point = x;
  }
  return out;
}

SubspaceReport subspace_report(const ReflectionRep& rep) {
  SubspaceReport s;
  const int n = rep.dim();
  s.v_basis = column_space(rep.v());
  s.alpha_basis = null_space(rep.alpha(), n);
  s.rank_a = numerical_rank(rep.cartan()).rank;
  s.reduced = s.alpha_basis.cols() == 0;
  s.dual_reduced = s.v_basis.cols() == n;
  return s;
}

int BlockDecomposition::block_size(int k) const {
  switch (k) {
    case 0: return static_cast<int>(u2.cols());
    case 1: return static_cast<int>(cap.cols());
    case 2: return static_cast<int>(u1.cols());
    case 3: return static_cast<int>(u3.cols());
  }
  return 0;
}

BlockDecomposition block_decomposition(const ReflectionRep& rep) {
  BlockDecomposition bd;
  const int n = rep.dim();
  const SubspaceReport sr = subspace_report(rep);
  bd.cap = intersect_spaces(sr.alpha_basis, sr.v_basis, n);
  bd.u2 = relative_complement(sr.alpha_basis, bd.cap);
  bd.u1 = relative_complement(sr.v_basis, bd.cap);
  Matrix sum(n, sr.alpha_basis.cols() + sr.v_basis.cols());
  sum << sr.alpha_basis, sr.v_basis;
  bd.u3 = orthogonal_complement(column_space(sum), n);
  bd.basis.resize(n, n);
  bd.basis << bd.u2, bd.cap, bd.u1, bd.u3;
  if (bd.basis.cols() != n)
    throw NumericalError("block_decomposition: adapted basis has " +
                         std::to_string(bd.basis.cols()) + " vectors for dimension " +
                         std::to_string(n));
  const Matrix inv = bd.basis.inverse();

  int off[5] = {0};
  for (int k = 0; k < 4; ++k) off[k + 1] = off[k] + bd.block_size(k);
  // 'I' identity block, '0' zero block, '*' free.
  static constexpr char pattern[4][5] = {"I000", "0I**", "00**", "000I"};
  for (const auto& g : rep.generators()) {
    Matrix ad = inv * g * bd.basis;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const char p = pattern[r][c];
        if (p == '*') continue;
        const int h = bd.block_size(r), w = bd.block_size(c);
        if (h == 0 || w == 0) continue;
        Matrix blk = ad.block(off[r], off[c], h, w);
        if (p == 'I') blk -= Matrix::Identity(h, w);
        bd.max_zero_block = std::max(bd.max_zero_block, blk.cwiseAbs().maxCoeff());
      }
    bd.adapted.push_back(std::move(ad));
  }

  const Matrix alpha_a = rep.alpha() * bd.basis;
  const Matrix v_a = inv * rep.v();
  auto induced = [&](int first, int last) {
    const int lo = off[first], len = off[last + 1] - off[first];
    return ReflectionRep(alpha_a.middleCols(lo, len), v_a.middleRows(lo, len));
  };
  bd.rho_v = induced(1, 2);
  bd.rho_alpha = induced(2, 3);
  bd.rho_v_alpha = induced(2, 2);
  return bd;
}

AtildeModel atilde_model(int n, double a) {
  if (n < 3) throw PreconditionError("atilde_model: need N >= 3");
  if (!(a > 0) || !std::isfinite(a)) throw PreconditionError("atilde_model: need a > 0");
  if (std::abs(a - 1.0) <= 1e-12)
    throw PreconditionError("atilde_model: a = 1 gives a zero-type Cartan matrix");
  Matrix alpha = Matrix::Zero(n, n);
  Matrix v = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    alpha(i, i) = 1.0;
    alpha(i, i + 1) = -1.0;
    v(i, i) = 1.0;
    v(i + 1, i) = -1.0;
  }
  alpha(n - 1, 0) = -1.0 / a;
  alpha(n - 1, n - 1) = 1.0;
  v(0, n - 1) = -a;
  v(n - 1, n - 1) = 1.0;

  AtildeModel out{ReflectionRep(alpha, v), Matrix(), {}};
  for (int i = 0; i + 1 < n; ++i) out.zigzag_word.push_back(i);
  for (int i = n - 3; i >= 0; --i) out.zigzag_word.push_back(i);
  out.zigzag_word.push_back(n - 1);
  out.zigzag = out.rep.element(out.zigzag_word);
  return out;
}

std::variant<ProximalData, UnipotentRegime> n2_proximal(const CartanMatrix& a) {
  if (a.rank() != 2 || a.coxeter()(0, 1) != kInfinity)
    throw PreconditionError("n2_proximal: need a 2x2 Cartan matrix with m = inf");
  const double a12 = a(0, 1), a21 = a(1, 0);
  const double t = a12 * a21;
  Matrix m(2, 2);
  m << -1.0 + t, a12, -a21, -1.0;
  if (t <= 4.0 + 1e-12) return UnipotentRegime{t, m};
  ProximalData p;
  p.t = t;
  p.m = m;
  const double root = std::sqrt(t * (t - 4.0));
  p.lambda_plus = ((t - 2.0) + root) / 2.0;
  p.lambda_minus = ((t - 2.0) - root) / 2.0;
  p.x_plus = Vector(2);
  p.x_plus << t + root, -2.0 * a21;
  p.x_minus = Vector(2);
  p.x_minus << t - root, -2.0 * a21;
  return p;
}

}  // namespace coxcc
