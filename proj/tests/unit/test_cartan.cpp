#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "coxcc/cartan.hpp"
#include "coxcc/corpus.hpp"
#include "coxcc/errors.hpp"
#include "oracles.hpp"

using namespace coxcc;

namespace {

CartanMatrix two_by_two(int m, double a12, double a21) {
  Matrix a(2, 2);
  a << 2, a12, a21, 2;
  return CartanMatrix(CoxeterMatrix(2, {{0, 1, m}}), a);
}

oracle::Mat to_mat(const Matrix& m) {
  oracle::Mat o(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) o[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return o;
}

Vector random_diagonal(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> d(0.2, 5.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

}  // namespace

TEST(Validate, Examples) {
  EXPECT_TRUE(validate(two_by_two(3, -1, -1)).empty());
  EXPECT_TRUE(validate(two_by_two(kInfinity, -2, -2)).empty());
  auto v = validate(two_by_two(kInfinity, -1, -1));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].clause, Clause::InfinityProduct);
  EXPECT_TRUE(validate(two_by_two(kInfinity, -1, -1), CompatLevel::Weak).empty());
}

TEST(Validate, EachClause) {
  Matrix a(2, 2);
  a << 2.5, -1, -1, 2;
  EXPECT_EQ(validate(CartanMatrix(CoxeterMatrix(2, {{0, 1, 3}}), a))[0].clause, Clause::Diagonal);
  EXPECT_EQ(validate(two_by_two(2, -1, 0))[0].clause, Clause::ZeroPattern);
  EXPECT_EQ(validate(two_by_two(3, 0, -1))[0].clause, Clause::ZeroPattern);
  EXPECT_EQ(validate(two_by_two(3, 1, 1))[0].clause, Clause::Sign);
  EXPECT_EQ(validate(two_by_two(3, -1, -2))[0].clause, Clause::Product);
  // Asymmetric but with the right product.
  EXPECT_TRUE(validate(two_by_two(4, -4, -0.5)).empty());
  EXPECT_NE(validate(two_by_two(3, -1, -2))[0].message().find("4cos"), std::string::npos);
}

TEST(Validate, ShapeMismatchThrows) {
  EXPECT_THROW(CartanMatrix(CoxeterMatrix(3), Matrix::Identity(2, 2)), ValidationError);
}

TEST(MatrixType, TwoByTwo) {
  auto p = matrix_type(two_by_two(3, -1, -1));
  EXPECT_EQ(p.type, MatrixType::Positive);
  EXPECT_NEAR(p.lowest_eigenvalue, 1.0, 1e-12);
  auto z = matrix_type(two_by_two(kInfinity, -2, -2));
  EXPECT_EQ(z.type, MatrixType::Zero);
  EXPECT_NEAR(z.lowest_eigenvalue, 0.0, 1e-12);
  auto n = matrix_type(two_by_two(kInfinity, -3, -3));
  EXPECT_EQ(n.type, MatrixType::Negative);
  EXPECT_NEAR(n.lowest_eigenvalue, -1.0, 1e-12);
}

TEST(MatrixType, PerronFrobeniusVector) {
  for (const auto& a : {corpus::ex92(2.0, 1.5), corpus::ex93(2.0, 1.0), affine_atilde_cartan(5, 3.0)}) {
    auto r = matrix_type(a);
    const double rho = 2.0 - r.lowest_eigenvalue;
    const Matrix b = 2.0 * Matrix::Identity(a.rank(), a.rank()) - a.entries();
    EXPECT_GT(r.pf_vector.minCoeff(), 0.0);
    EXPECT_NEAR(r.pf_vector.sum(), 1.0, 1e-12);
    EXPECT_LE((b * r.pf_vector - rho * r.pf_vector).lpNorm<Eigen::Infinity>(), 1e-8 * inf_norm(a.entries()));
    EXPECT_NEAR(r.lowest_eigenvalue, r.dense_lowest, 1e-8);
  }
}

TEST(MatrixType, DisconnectedRejected) {
  EXPECT_THROW(matrix_type(CartanMatrix(CoxeterMatrix(2), 2 * Matrix::Identity(2, 2))), PreconditionError);
}

TEST(MatrixType, TitsTables) {
  // Tits matrices are symmetric; the Jacobi oracle gives their spectrum.
  std::vector<CoxeterMatrix> sph, aff;
  for (int n = 1; n <= 9; ++n) sph.push_back(make_diagram(Family::A, n));
  for (int n = 2; n <= 9; ++n) sph.push_back(make_diagram(Family::B, n));
  for (int n = 4; n <= 9; ++n) sph.push_back(make_diagram(Family::D, n));
  for (int p : {5, 6, 7, 100}) sph.push_back(make_diagram(Family::I2, 2, p));
  for (Family f : {Family::H3, Family::H4, Family::F4, Family::E6, Family::E7, Family::E8})
    sph.push_back(make_diagram(f, 0));
  aff.push_back(make_diagram(Family::AffineA1, 1));
  for (int n = 2; n <= 8; ++n) aff.push_back(make_diagram(Family::AffineA, n));
  for (int n = 3; n <= 8; ++n) aff.push_back(make_diagram(Family::AffineB, n));
  for (int n = 3; n <= 8; ++n) aff.push_back(make_diagram(Family::AffineC, n));
  for (int n = 4; n <= 8; ++n) aff.push_back(make_diagram(Family::AffineD, n));
  for (Family f : {Family::AffineB2C2, Family::AffineG2, Family::AffineF4, Family::AffineE6, Family::AffineE7,
                   Family::AffineE8})
    aff.push_back(make_diagram(f, 0));
  for (const auto& w : sph) {
    auto t = tits_cartan(w);
    EXPECT_EQ(matrix_type(t).type, MatrixType::Positive);
    EXPECT_GT(oracle::sym_eigenvalues(to_mat(t.entries())).front(), 1e-6);
  }
  for (const auto& w : aff) {
    auto t = tits_cartan(w);
    auto r = matrix_type(t);
    EXPECT_EQ(r.type, MatrixType::Zero);
    EXPECT_LE(std::abs(r.lowest_eigenvalue), 1e-8);
    EXPECT_LE(std::abs(oracle::sym_eigenvalues(to_mat(t.entries())).front()), 1e-9);
  }
}

TEST(MatrixType, Ex91TitsIsNegative) {
  // The all-inf 5-path Tits matrix has spectrum {2-2sqrt3, 0, 2, 4, 2+2sqrt3}.
  auto t = tits_cartan(corpus::ex91_coxeter());
  auto r = matrix_type(t);
  EXPECT_EQ(r.type, MatrixType::Negative);
  EXPECT_NEAR(r.lowest_eigenvalue, 2.0 - 2.0 * std::sqrt(3.0), 1e-10);
  EXPECT_NEAR(t.entries().determinant(), 0.0, 1e-9);
  auto ev = oracle::sym_eigenvalues(to_mat(t.entries()));
  EXPECT_NEAR(ev[1], 0.0, 1e-12);
}

TEST(MatrixType, DiagonalConjugationPreservesSpectrum) {
  std::mt19937 rng(21);
  for (const auto& a : {corpus::ex92(0.7, 1.3), corpus::ex93(3.0, 0.5), affine_atilde_cartan(4, 0.5),
                        corpus::ex91(1.5, 2.0, 1.2, 2.5)}) {
    for (int k = 0; k < 10; ++k) {
      auto b = conjugate_by_diagonal(a, random_diagonal(rng, a.rank()));
      EXPECT_NEAR(matrix_type(a).lowest_eigenvalue, matrix_type(b).lowest_eigenvalue, 1e-8);
      EXPECT_EQ(matrix_type(a).type, matrix_type(b).type);
    }
  }
}

TEST(MatrixType, SymmetrizableOracle) {
  std::mt19937 rng(4);
  for (double y : {1.0, 1.2, 2.0}) {
    auto a = corpus::ex92(1.0, y);
    EXPECT_NEAR(matrix_type(a).lowest_eigenvalue, oracle::lowest_eigenvalue_symmetrizable(to_mat(a.entries())), 1e-9);
  }
}

TEST(Normalize, Examples) {
  Matrix a(2, 2);
  a << 2, -4, -1, 2;
  auto n = normalize(CartanMatrix(CoxeterMatrix(2, {{0, 1, kInfinity}}), a));
  EXPECT_NEAR(n(0, 1), -2.0, 1e-12);
  EXPECT_NEAR(n(1, 0), -2.0, 1e-12);
  auto s = tits_cartan(corpus::ex92_coxeter());
  EXPECT_LE((normalize(s).entries() - s.entries()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Normalize, Ex92Restored) {
  Vector d = Vector::Ones(6);
  d(1) = 2.0;
  // Symmetric at x = 1, so normalize returns A itself.
  auto a = corpus::ex92(1.0, 1.4);
  auto b = conjugate_by_diagonal(a, d);
  EXPECT_GT((b.entries() - a.entries()).cwiseAbs().maxCoeff(), 0.1);
  EXPECT_LE((normalize(b).entries() - a.entries()).cwiseAbs().maxCoeff(), 1e-9);
  auto c = corpus::ex92(1.7, 1.4);
  auto cb = conjugate_by_diagonal(c, d);
  EXPECT_LE((normalize(cb).entries() - normalize(c).entries()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Normalize, IdempotentAndInvariant) {
  std::mt19937 rng(8);
  for (const auto& a : {corpus::ex93(2.5, 0.4), affine_atilde_cartan(6, 3.0), corpus::ex91(1.1, 2.2, 1.7, 2.9),
                        generic_cc_cartan(corpus::ex93_coxeter())}) {
    auto n = normalize(a);
    EXPECT_LE((normalize(n).entries() - n.entries()).cwiseAbs().maxCoeff(), 1e-9);
    for (int k = 0; k < 20; ++k) {
      auto b = conjugate_by_diagonal(a, random_diagonal(rng, a.rank()));
      EXPECT_LE((normalize(b).entries() - n.entries()).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(Invariants, Examples) {
  const double x = 1.7;
  auto inv = equivalence_invariants(corpus::ex93(x, 1.3));
  bool found = false;
  for (const auto& [cyc, r] : inv.cycle_products) {
    std::vector<int> sorted = cyc;
    std::sort(sorted.begin(), sorted.end());
    if (sorted == std::vector<int>{0, 1, 2}) {
      found = true;
      EXPECT_NEAR(std::pow(r, cyc[1] == 1 ? 1 : -1), x * x, 1e-12);
    }
  }
  EXPECT_TRUE(found);
  auto inv91 = equivalence_invariants(corpus::ex91(1.5, 2.0, 2.5, 3.0));
  EXPECT_TRUE(inv91.cycle_products.empty());
  ASSERT_EQ(inv91.pair_products.size(), 4u);
  EXPECT_NEAR(inv91.pair_products.at({0, 1}), 6.0, 1e-12);
  EXPECT_NEAR(inv91.pair_products.at({1, 2}), 8.0, 1e-12);
  EXPECT_NEAR(inv91.pair_products.at({2, 3}), 10.0, 1e-12);
  EXPECT_NEAR(inv91.pair_products.at({3, 4}), 12.0, 1e-12);
}

TEST(Invariants, ConjugationInvariance) {
  std::mt19937 rng(12);
  for (const auto& a : {corpus::ex92(2.0, 1.2), corpus::ex93(0.6, 2.0), affine_atilde_cartan(5, 2.0)}) {
    auto base = equivalence_invariants(a);
    for (int k = 0; k < 25; ++k) {
      auto inv = equivalence_invariants(conjugate_by_diagonal(a, random_diagonal(rng, a.rank())));
      ASSERT_EQ(inv.pair_products.size(), base.pair_products.size());
      ASSERT_EQ(inv.cycle_products.size(), base.cycle_products.size());
      for (const auto& [k2, v] : base.pair_products) EXPECT_NEAR(inv.pair_products.at(k2), v, 1e-9);
      for (const auto& [k2, v] : base.cycle_products) EXPECT_NEAR(inv.cycle_products.at(k2), v, 1e-9);
    }
  }
}

TEST(Tits, Values) {
  auto a2 = tits_cartan(make_diagram(Family::A, 2));
  EXPECT_EQ(a2(0, 1), -1.0);
  EXPECT_EQ(a2(1, 0), -1.0);
  auto a1 = tits_cartan(make_diagram(Family::AffineA1, 1));
  EXPECT_EQ(a1(0, 1), -2.0);
  auto i5 = tits_cartan(make_diagram(Family::I2, 2, 5));
  EXPECT_NEAR(i5(0, 1), -1.6180339887, 1e-10);
  EXPECT_NEAR(i5(0, 1), -2 * std::cos(std::numbers::pi / 5), 1e-15);
}

TEST(Tits, Deformed) {
  auto w = make_diagram(Family::AffineA1, 1);
  auto d0 = deformed_tits_cartan(w, {{{0, 1}, 0.0}});
  EXPECT_EQ(d0(0, 1), -2.0);
  auto d1 = deformed_tits_cartan(w, {{{0, 1}, 1.0}});
  EXPECT_NEAR(d1(0, 1) * d1(1, 0), 9.0, 1e-12);
  EXPECT_EQ(matrix_type(d1).type, MatrixType::Negative);
  EXPECT_NEAR(matrix_type(d1).lowest_eigenvalue, -1.0, 1e-12);
  EXPECT_THROW(deformed_tits_cartan(w, {}), ValidationError);
  EXPECT_THROW(deformed_tits_cartan(w, {{{0, 1}, -0.5}}), ValidationError);
  EXPECT_THROW(deformed_tits_cartan(w, {{{0, 1}, 0.5}, {{0, 2}, 0.5}}), ValidationError);
  auto ex91 = deformed_tits_cartan(corpus::ex91_coxeter(), {{{0, 1}, 0}, {{1, 2}, 0}, {{2, 3}, 0}, {{3, 4}, 0}});
  EXPECT_EQ(ex91.entries(), tits_cartan(corpus::ex91_coxeter()).entries());
  EXPECT_NEAR(ex91.entries().determinant(), corpus::ex91_det(1, 1, 1, 1), 1e-9);
}

TEST(Generic, Triangle) {
  auto a = generic_cc_cartan(make_diagram(Family::AffineA, 2));
  Matrix want(3, 3);
  want << 2, -2, -3, -0.5, 2, -5, -1.0 / 3, -0.2, 2;
  EXPECT_LE((a.entries() - want).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(a.entries().determinant(), -49.0 / 30.0, 1e-12);
}

TEST(Generic, TriangleInsideLargeGroup) {
  // The triangle values, read off the ~A2 block of ex93's diagram.
  auto a = generic_cc_cartan(corpus::ex93_coxeter());
  EXPECT_TRUE(is_compatible(a));
  auto tri = submatrix(a, VertexSet({0, 1, 2}));
  EXPECT_DOUBLE_EQ(tri(0, 1), -2.0);
  EXPECT_DOUBLE_EQ(tri(1, 0), -0.5);
  EXPECT_DOUBLE_EQ(tri(0, 2), -3.0);
  EXPECT_DOUBLE_EQ(tri(2, 0), -1.0 / 3);
  EXPECT_DOUBLE_EQ(tri(1, 2), -5.0);
  EXPECT_DOUBLE_EQ(tri(2, 1), -0.2);
  EXPECT_NEAR(cycle_product(tri.entries(), {0, 1, 2}), 100.0 / 9.0, 1e-12);
  EXPECT_NEAR(oracle::det_leibniz(to_mat(tri.entries())), -49.0 / 30.0, 1e-12);
  EXPECT_NEAR(tri.entries().determinant(), -49.0 / 30.0, 1e-12);
  EXPECT_EQ(matrix_type(tri).type, MatrixType::Negative);
}

TEST(Generic, InfinityEntries) {
  auto a = generic_cc_cartan(corpus::ex92_coxeter());
  EXPECT_EQ(a(3, 4), -2.5);
  EXPECT_EQ(a(4, 3), -2.5);
  EXPECT_EQ(a(3, 4) * a(4, 3), 6.25);
  EXPECT_TRUE(is_compatible(a));
  EXPECT_THROW(generic_cc_cartan(corpus::ex91_coxeter()), PreconditionError);
}

TEST(AffineAtilde, Determinant) {
  for (int n = 3; n <= 8; ++n)
    for (double a : {0.5, 1.0, 2.0, 3.0}) {
      auto c = affine_atilde_cartan(n, a);
      EXPECT_TRUE(is_compatible(c));
      EXPECT_NEAR(c.entries().determinant(), 2 - a - 1 / a, 1e-9);
      if (n <= 7) EXPECT_NEAR(oracle::det_leibniz(to_mat(c.entries())), 2 - a - 1 / a, 1e-9);
      EXPECT_EQ(matrix_type(c).type, a == 1.0 ? MatrixType::Zero : MatrixType::Negative);
    }
  EXPECT_NEAR(affine_atilde_cartan(3, 2).entries().determinant(), -0.5, 1e-12);
  EXPECT_NEAR(affine_atilde_cartan(4, 3).entries().determinant(), -4.0 / 3.0, 1e-12);
  EXPECT_THROW(affine_atilde_cartan(2, 2.0), PreconditionError);
  EXPECT_THROW(affine_atilde_cartan(3, -1.0), PreconditionError);
}

TEST(Symmetrizable, Cases) {
  EXPECT_TRUE(is_symmetrizable(tits_cartan(corpus::ex92_coxeter())));
  EXPECT_FALSE(is_symmetrizable(affine_atilde_cartan(3, 2)));
  EXPECT_TRUE(is_symmetrizable(corpus::ex93(1.0, 1.0)));
  EXPECT_TRUE(is_symmetrizable(submatrix(corpus::ex93(1.0, 3.0), VertexSet({0, 1, 2}))));
  EXPECT_FALSE(is_symmetrizable(corpus::ex93(2.0, 1.0)));
}

TEST(Submatrix, Cases) {
  auto a = corpus::ex93(1.0, 2.0);
  auto full = submatrix(a, a.coxeter().generators());
  EXPECT_EQ(full.entries(), a.entries());
  EXPECT_EQ(full.coxeter(), a.coxeter());
  auto tri = submatrix(a, VertexSet({0, 1, 2}));
  EXPECT_EQ(matrix_type(tri).type, MatrixType::Zero);
  auto one = submatrix(a, VertexSet({0}));
  EXPECT_EQ(one.entries()(0, 0), 2.0);
  EXPECT_EQ(matrix_type(one).type, MatrixType::Positive);
  EXPECT_THROW(submatrix(a, VertexSet()), PreconditionError);
}
