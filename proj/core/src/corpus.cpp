#include "coxcc/corpus.hpp"

#include <cmath>
#include <random>

#include "coxcc/errors.hpp"
#include "coxcc/io.hpp"
#include "coxcc/reflection.hpp"

namespace coxcc::corpus {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

const char* kEx91Cox =
    "# path s1 - s2 - s3 - s4 - s5, every label inf\n"
    "5\n"
    "1 2 inf\n"
    "2 3 inf\n"
    "3 4 inf\n"
    "4 5 inf\n";

const char* kEx92Cox =
    "# square s1 s2 s3 s4 of 6s, then s4 -inf- s5 -6- s6\n"
    "6\n"
    "1 2 6\n"
    "2 3 6\n"
    "3 4 6\n"
    "4 1 6\n"
    "4 5 inf\n"
    "5 6 6\n";

const char* kEx93Cox =
    "# triangle s1 s2 s3 of 3s; s4 joined to s1 by 4 and to s3 by 3\n"
    "4\n"
    "1 2 3\n"
    "1 3 3\n"
    "2 3 3\n"
    "1 4 4\n"
    "3 4 3\n";

const char* kFig5Cox =
    "# s1 -inf- s2 -inf- s3, s1 and s3 commute\n"
    "3\n"
    "1 2 inf\n"
    "2 3 inf\n";

const char* kAtilde1Cox = "2\n1 2 inf\n";

}  // namespace

CoxeterMatrix ex91_coxeter() { return parse_cox(kEx91Cox); }
CoxeterMatrix ex92_coxeter() { return parse_cox(kEx92Cox); }
CoxeterMatrix ex93_coxeter() { return parse_cox(kEx93Cox); }
CoxeterMatrix fig5_coxeter() { return parse_cox(kFig5Cox); }

CartanMatrix ex91(double x, double y, double z, double u) {
  Matrix a(5, 5);
  a << 2, -2 * x, 0, 0, 0,
      -2, 2, -2 * y, 0, 0,
      0, -2, 2, -2 * z, 0,
      0, 0, -2, 2, -2 * u,
      0, 0, 0, -2, 2;
  return CartanMatrix(ex91_coxeter(), a);
}

CartanMatrix ex92(double x, double y) {
  const double r = kSqrt3;
  Matrix a(6, 6);
  a << 2, -r, 0, -r * x, 0, 0,
      -r, 2, -r, 0, 0, 0,
      0, -r, 2, -r, 0, 0,
      -r / x, 0, -r, 2, -2 * y, 0,
      0, 0, 0, -2 * y, 2, -r,
      0, 0, 0, 0, -r, 2;
  return CartanMatrix(ex92_coxeter(), a);
}

CartanMatrix ex93(double x, double y) {
  Matrix a(4, 4);
  a << 2, -1, -1, -kSqrt2,
      -1, 2, -x, 0,
      -1, -1 / x, 2, -y,
      -kSqrt2, 0, -1 / y, 2;
  return CartanMatrix(ex93_coxeter(), a);
}

CartanMatrix ex31() {
  Matrix a(2, 2);
  a << 2, -3, -2, 2;
  return CartanMatrix(parse_cox(kAtilde1Cox), a);
}

CartanMatrix fig5() {
  Matrix a(3, 3);
  a << 2, -2.5, 0,
      -2.5, 2, -2.5,
      0, -2.5, 2;
  return CartanMatrix(fig5_coxeter(), a);
}

double ex91_det(double x, double y, double z, double u) {
  return 32 * (x * u + x * z + y * u - x - y - z - u + 1);
}

double ex92_det(double x, double y) { return 32 * y * y - 9 * (x + 1 / x) - 14; }

double ex92_minor11(double y) { return -4 * (2 * y * y + 1); }

double ex93_det(double x, double y) {
  return -(2 * (x + 1 / x) + 2 * kSqrt2 * (y + 1 / y) + kSqrt2 * (x * y + 1 / (x * y)) + 5);
}

double ex92_curve_y(double x) {
  if (!(x > 0)) throw PreconditionError("ex92_curve_y: need x > 0");
  return std::sqrt((9 * (x + 1 / x) + 14) / 32);
}

const std::vector<TemplateInfo>& templates() {
  static const std::vector<TemplateInfo> t = {
      {"ex91", {{"x", 1}, {"y", 1}, {"z", 1}, {"u", 1}}, kEx91Cox},
      {"ex92", {{"x", 1}, {"y", 1}}, kEx92Cox},
      {"ex93", {{"x", 2}, {"y", 1}}, kEx93Cox},
      {"ex31", {}, kAtilde1Cox},
      {"fig5", {}, kFig5Cox},
      {"atilde", {{"n", 3}, {"a", 2}}, ""},
  };
  return t;
}

bool has_template(const std::string& name) {
  for (const auto& t : templates())
    if (t.name == name) return true;
  return false;
}

CartanMatrix instantiate(const std::string& name, const std::map<std::string, double>& params) {
  const TemplateInfo* info = nullptr;
  for (const auto& t : templates())
    if (t.name == name) info = &t;
  if (!info) throw ValidationError("unknown Cartan template '" + name + "'");
  auto p = info->defaults;
  for (const auto& [k, v] : params) {
    if (!p.count(k)) throw ValidationError("template '" + name + "' has no parameter '" + k + "'");
    p[k] = v;
  }
  for (const auto& [k, v] : p)
    if (!std::isfinite(v)) throw ValidationError("parameter '" + k + "' is not finite");
  auto positive = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (!(p[k] > 0)) throw ValidationError(std::string("parameter '") + k + "' must be > 0");
  };
  if (name == "ex91") {
    positive({"x", "y", "z", "u"});
    return ex91(p["x"], p["y"], p["z"], p["u"]);
  }
  if (name == "ex92") {
    positive({"x", "y"});
    return ex92(p["x"], p["y"]);
  }
  if (name == "ex93") {
    positive({"x", "y"});
    return ex93(p["x"], p["y"]);
  }
  if (name == "ex31") return ex31();
  if (name == "fig5") return fig5();
  const double nn = p["n"];
  if (nn != std::floor(nn) || nn < 3) throw ValidationError("parameter 'n' must be an integer >= 3");
  positive({"a"});
  return affine_atilde_cartan(static_cast<int>(nn), p["a"]);
}

std::vector<IdentityCheck> identity_checks(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto minor = [](const Matrix& m, int r, int c) {
    Matrix s(m.rows() - 1, m.cols() - 1);
    for (Eigen::Index i = 0, si = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      for (Eigen::Index j = 0, sj = 0; j < m.cols(); ++j) {
        if (j == c) continue;
        s(si, sj++) = m(i, j);
      }
      ++si;
    }
    return s.determinant();
  };
  std::vector<IdentityCheck> out;
  auto run = [&](std::string name, double tol, auto&& one) {
    IdentityCheck c{std::move(name), samples, 0.0, tol, false};
    for (int k = 0; k < samples; ++k) c.max_error = std::max(c.max_error, one());
    c.pass = c.max_error <= tol;
    out.push_back(c);
  };
  run("ex91 det = 32(xu+xz+yu-x-y-z-u+1)", 1e-8, [&] {
    double x = uni(1, 3), y = uni(1, 3), z = uni(1, 3), u = uni(1, 3);
    return std::abs(ex91(x, y, z, u).entries().determinant() - ex91_det(x, y, z, u));
  });
  run("ex91 (2,4)-minor = 16", 1e-9, [&] {
    double x = uni(1, 3), y = uni(1, 3), z = uni(1, 3), u = uni(1, 3);
    return std::abs(minor(ex91(x, y, z, u).entries(), 1, 3) - 16.0);
  });
  run("ex92 det = 32y^2 - 9(x+1/x) - 14", 1e-8, [&] {
    double x = uni(0.3, 3), y = uni(1, 3);
    return std::abs(ex92(x, y).entries().determinant() - ex92_det(x, y));
  });
  run("ex92 (1,1)-minor = -4(2y^2+1)", 1e-8, [&] {
    double x = uni(0.3, 3), y = uni(1, 3);
    return std::abs(minor(ex92(x, y).entries(), 0, 0) - ex92_minor11(y));
  });
  run("ex93 det formula", 1e-8, [&] {
    double x = uni(0.3, 3), y = uni(0.3, 3);
    return std::abs(ex93(x, y).entries().determinant() - ex93_det(x, y));
  });
  run("ex31 proximal eigenvalue product = 1", 1e-12, [&] {
    auto p = std::get<ProximalData>(n2_proximal(ex31()));
    return std::abs(p.lambda_plus * p.lambda_minus - 1.0);
  });
  run("atilde zigzag = Diag(1/a,1,...,1,a)", 1e-9, [&] {
    const int n = 3 + static_cast<int>(rng() % 5);
    const double a = uni(0.3, 3.0);
    auto m = atilde_model(n, a);
    Matrix want = Matrix::Identity(n, n);
    want(0, 0) = 1 / a;
    want(n - 1, n - 1) = a;
    return (m.zigzag - want).cwiseAbs().maxCoeff();
  });
  return out;
}

}  // namespace coxcc::corpus
