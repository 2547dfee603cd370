#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "coxcc/corpus.hpp"
#include "coxcc/errors.hpp"
#include "coxcc/io.hpp"
#include "oracles.hpp"

using namespace coxcc;

namespace {

oracle::Mat to_mat(const Matrix& m) {
  oracle::Mat out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return out;
}

const std::filesystem::path kData = COXCC_DATA_DIR;

}  // namespace

TEST(Corpus, Ex91DeterminantByLeibniz) {
  std::mt19937 rng(91);
  std::uniform_real_distribution<double> u(1.0, 3.0);
  for (int k = 0; k < 30; ++k) {
    const double x = u(rng), y = u(rng), z = u(rng), w = u(rng);
    const auto a = to_mat(corpus::ex91(x, y, z, w).entries());
    EXPECT_NEAR(oracle::det_leibniz(a), 32 * (x * w + x * z + y * w - x - y - z - w + 1), 1e-8);
    EXPECT_NEAR(oracle::det_leibniz(oracle::minor_of(a, 1, 3)), 16.0, 1e-9);
  }
}

TEST(Corpus, Ex92DeterminantByLeibniz) {
  std::mt19937 rng(92);
  std::uniform_real_distribution<double> ux(0.3, 3.0), uy(1.0, 3.0);
  for (int k = 0; k < 30; ++k) {
    const double x = ux(rng), y = uy(rng);
    const auto a = to_mat(corpus::ex92(x, y).entries());
    EXPECT_NEAR(oracle::det_leibniz(a), 32 * y * y - 9 * (x + 1 / x) - 14, 1e-8);
    EXPECT_NEAR(oracle::det_leibniz(oracle::minor_of(a, 0, 0)), -4 * (2 * y * y + 1), 1e-8);
  }
  for (double x : {0.4, 1.0, 2.5})
    EXPECT_NEAR(corpus::ex92_det(x, corpus::ex92_curve_y(x)), 0.0, 1e-9);
}

TEST(Corpus, Ex93DeterminantNegative) {
  std::mt19937 rng(93);
  std::uniform_real_distribution<double> u(0.2, 5.0);
  const double r2 = std::sqrt(2.0);
  for (int k = 0; k < 30; ++k) {
    const double x = u(rng), y = u(rng);
    const double d = oracle::det_leibniz(to_mat(corpus::ex93(x, y).entries()));
    const double want = -(2 * (x + 1 / x) + 2 * r2 * (y + 1 / y) + r2 * (x * y + 1 / (x * y)) + 5);
    EXPECT_NEAR(d, want, 1e-8);
    EXPECT_LT(d, 0.0);
  }
}

TEST(Corpus, Compatible) {
  EXPECT_TRUE(is_compatible(corpus::ex91(1.5, 2, 2.5, 3)));
  EXPECT_TRUE(is_compatible(corpus::ex92(0.5, 1.3)));
  EXPECT_TRUE(is_compatible(corpus::ex93(0.5, 1.3)));
  EXPECT_TRUE(is_compatible(corpus::ex31()));
  EXPECT_TRUE(is_compatible(corpus::fig5()));
}

TEST(Corpus, Templates) {
  for (const auto& t : corpus::templates()) {
    EXPECT_TRUE(corpus::has_template(t.name));
    auto a = corpus::instantiate(t.name, {});
    EXPECT_TRUE(is_compatible(a)) << t.name;
    if (!t.cox.empty()) EXPECT_EQ(parse_cox(t.cox), a.coxeter());
  }
  EXPECT_EQ(corpus::instantiate("ex93", {{"x", 3.0}}).entries(), corpus::ex93(3.0, 1.0).entries());
  EXPECT_EQ(corpus::instantiate("atilde", {{"n", 5}, {"a", 3}}).rank(), 5);
  EXPECT_THROW(corpus::instantiate("ex93", {{"q", 1.0}}), ValidationError);
  EXPECT_THROW(corpus::instantiate("ex93", {{"x", -1.0}}), ValidationError);
  EXPECT_THROW(corpus::instantiate("ex93", {{"x", NAN}}), ValidationError);
  EXPECT_THROW(corpus::instantiate("nope", {}), ValidationError);
}

TEST(Corpus, IdentityChecksPass) {
  for (std::uint64_t seed : {1ull, 7ull, 12345ull}) {
    auto checks = corpus::identity_checks(seed);
    EXPECT_GE(checks.size(), 6u);
    for (const auto& c : checks) {
      EXPECT_TRUE(c.pass) << c.name << " " << c.max_error;
      EXPECT_EQ(c.samples, 20);
    }
  }
}

TEST(DataFiles, MatchCorpus) {
  EXPECT_EQ(read_cox_file(kData / "ex91.cox"), corpus::ex91_coxeter());
  EXPECT_EQ(read_cox_file(kData / "ex92.cox"), corpus::ex92_coxeter());
  EXPECT_EQ(read_cox_file(kData / "ex93.cox"), corpus::ex93_coxeter());
  EXPECT_EQ(read_cox_file(kData / "fig5.cox"), corpus::fig5_coxeter());
  EXPECT_EQ(read_cartan_file(kData / "ex31.cartan").entries(), corpus::ex31().entries());
  EXPECT_EQ(read_cartan_file(kData / "fig5.cartan").entries(), corpus::fig5().entries());
  EXPECT_EQ(read_cartan_file(kData / "ex92.cartan", {{"x", 2.0}, {"y", 1.5}}).entries(),
            corpus::ex92(2.0, 1.5).entries());
  EXPECT_EQ(read_cartan_file(kData / "ex93.cartan").entries(), corpus::ex93(2.0, 1.0).entries());
}
