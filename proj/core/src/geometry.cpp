#include "coxcc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coxcc/decision.hpp"
#include "coxcc/errors.hpp"

namespace coxcc {

std::optional<Vector> span_coordinates(const Matrix& gens, const Vector& x, double tol) {
  if (gens.cols() == 0) {
    if (x.lpNorm<Eigen::Infinity>() <= tol) return Vector(0);
    return std::nullopt;
  }
  Vector c = gens.colPivHouseholderQr().solve(x);
  const double res = (gens * c - x).lpNorm<Eigen::Infinity>();
  if (res > tol * std::max(1.0, x.lpNorm<Eigen::Infinity>())) return std::nullopt;
  return c;
}

PolyCone PolyCone::fundamental(const ReflectionRep& rep) {
  return {Kind::ByInequalities, rep.alpha()};
}

PolyCone PolyCone::dual(const ReflectionRep& rep) { return {Kind::ByGenerators, rep.v()}; }

bool PolyCone::contains(const Vector& x, double tol) const {
  const double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());
  if (kind == Kind::ByInequalities) return (data * x).maxCoeff() <= tol * scale;
  auto c = span_coordinates(data, x, tol);
  return c && (c->size() == 0 || c->minCoeff() >= -tol * scale);
}

namespace {

void require_independent_v(const ReflectionRep& rep, const char* what) {
  if (numerical_rank(rep.v()).rank < rep.rank())
    throw PreconditionError(std::string(what) + ": the vectors v_j are linearly dependent");
}

// Components of the pattern of nonzero entries of A.
std::vector<std::vector<int>> pattern_components(const Matrix& a) {
  const auto n = static_cast<int>(a.rows());
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> members{s};
    comp[static_cast<std::size_t>(s)] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < members.size(); ++k)
      for (int j = 0; j < n; ++j) {
        const int i = members[k];
        if (comp[static_cast<std::size_t>(j)] < 0 && (a(i, j) != 0.0 || a(j, i) != 0.0)) {
          comp[static_cast<std::size_t>(j)] = static_cast<int>(out.size());
          members.push_back(j);
        }
      }
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  return out;
}

std::optional<Vector> interior_point(const ReflectionRep& rep) {
  const Matrix a = rep.cartan();
  Vector x = Vector::Zero(rep.dim());
  for (const auto& c : pattern_components(a)) {
    const auto k = static_cast<Eigen::Index>(c.size());
    Matrix sub(k, k);
    for (Eigen::Index r = 0; r < k; ++r)
      for (Eigen::Index q = 0; q < k; ++q)
        sub(r, q) = a(c[static_cast<std::size_t>(r)], c[static_cast<std::size_t>(q)]);
    const TypeReport tr = matrix_type(sub);
    if (tr.type == MatrixType::Zero) return std::nullopt;
    const double sign = tr.type == MatrixType::Negative ? 1.0 : -1.0;
    for (Eigen::Index r = 0; r < k; ++r) x += sign * tr.pf_vector(r) * rep.v().col(c[static_cast<std::size_t>(r)]);
  }
  return x;
}

}  // namespace

PrunedDomain::PrunedDomain(const ReflectionRep& rep) : rep_(rep) {
  require_independent_v(rep, "PrunedDomain");
  x0_ = interior_point(rep);
}

bool PrunedDomain::in_delta(const Vector& x) const {
  return PolyCone::fundamental(rep_).contains(x);
}

bool PrunedDomain::in_sigma(const Vector& x) const {
  if (!in_delta(x)) return false;
  auto t = span_coordinates(rep_.v(), x);
  return t && t->minCoeff() >= -kSigmaStrict;
}

bool PrunedDomain::in_sigma_flat(const Vector& x) const {
  if (!in_delta(x)) return false;
  auto t = span_coordinates(rep_.v(), x);
  return t && t->minCoeff() > kSigmaStrict;
}

// ---------------------------------------------------------------------------

namespace {

Matrix normalized(const Matrix& m) {
  const double s = m.cwiseAbs().maxCoeff();
  return s > 0 ? Matrix(m / s) : m;
}

double projection(const Matrix& nm) {
  double p = 0.0;
  for (Eigen::Index k = 0; k < nm.size(); ++k) {
    const double w = 1.0 + std::fmod(0.6180339887498949 * static_cast<double>(k + 1), 1.0);
    p += w * nm.data()[k];
  }
  return p;
}

std::int64_t bucket_of(double p, double width) {
  return static_cast<std::int64_t>(std::floor(p / width));
}

double bucket_width(const Matrix& m, double tol) {
  return 4.0 * static_cast<double>(m.size()) * tol;
}

// Closest match in the neighbouring buckets: (index, distance).
std::pair<int, double> nearest(const Tiling& t, const Matrix& nm, double width) {
  const std::int64_t b = bucket_of(projection(nm), width);
  int best = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (std::int64_t k = b - 1; k <= b + 1; ++k) {
    auto [lo, hi] = t.buckets.equal_range(k);
    for (auto it = lo; it != hi; ++it) {
      const double d =
          (normalized(t.elements[static_cast<std::size_t>(it->second)].matrix) - nm).cwiseAbs().maxCoeff();
      if (d < bd) {
        bd = d;
        best = it->second;
      }
    }
  }
  return {best, bd};
}

}  // namespace

int Tiling::find(const Matrix& m) const {
  if (elements.empty()) return -1;
  auto [idx, d] = nearest(*this, normalized(m), bucket_width(m, tol));
  return d <= tol ? idx : -1;
}

int Tiling::count_of_length(int len) const {
  return static_cast<int>(std::count_if(elements.begin(), elements.end(), [&](const TilingElement& e) {
    return static_cast<int>(e.word.size()) == len;
  }));
}

void Tiling::reindex() {
  buckets.clear();
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const Matrix& m = elements[k].matrix;
    buckets.emplace(bucket_of(projection(normalized(m)), bucket_width(m, tol)), static_cast<int>(k));
  }
}

Tiling orbit(const ReflectionRep& rep, int depth, const OrbitOptions& opt) {
  if (depth < 0 || depth > kMaxOrbitDepth)
    throw BudgetError("orbit depth must be in [0, " + std::to_string(kMaxOrbitDepth) + "], got " +
                      std::to_string(depth));
  Tiling t;
  t.depth = depth;
  t.alpha = rep.alpha();
  t.v = rep.v();
  t.tol = opt.tol;
  const int n = rep.dim();
  const double width = 4.0 * n * n * opt.tol;
  bool warned = false;

  auto add = [&](Word w, Matrix m) {
    const Matrix nm = normalized(m);
    t.buckets.emplace(bucket_of(projection(nm), width), static_cast<int>(t.elements.size()));
    t.elements.push_back({std::move(w), std::move(m)});
  };
  add({}, Matrix::Identity(n, n));

  std::size_t layer_begin = 0, layer_end = 1;
  for (int len = 1; len <= depth; ++len) {
    for (std::size_t e = layer_begin; e < layer_end; ++e) {
      for (int i = 0; i < rep.rank(); ++i) {
        const Word& w = t.elements[e].word;
        if (!w.empty() && w.back() == i) continue;
        Matrix m = t.elements[e].matrix * rep.generator(i);
        auto [idx, d] = nearest(t, normalized(m), width);
        if (d <= opt.tol) continue;
        if (d <= 10.0 * opt.tol && !warned) {
          t.warnings.push_back("dedup near-collision: distance " + std::to_string(d) +
                               " within 10x tolerance of element " + std::to_string(idx));
          warned = true;
        }
        Word nw = w;
        nw.push_back(i);
        add(std::move(nw), std::move(m));
        if (t.elements.size() > opt.max_elements)
          throw BudgetError("orbit exceeded " + std::to_string(opt.max_elements) + " elements");
      }
    }
    layer_begin = layer_end;
    layer_end = t.elements.size();
  }
  return t;
}

// ---------------------------------------------------------------------------

LengthReport length_property_check(const ReflectionRep& rep, int depth) {
  LengthReport r;
  if (numerical_rank(rep.v()).rank < rep.rank()) {
    r.skipped = true;
    r.notice = "v_j linearly dependent; cone membership is not coordinatewise";
    return r;
  }
  const Tiling t = orbit(rep, depth);
  const auto qr = rep.v().colPivHouseholderQr();
  for (const auto& e : t.elements) {
    const int len = static_cast<int>(e.word.size());
    for (int i = 0; i < rep.rank(); ++i) {
      const int j = t.find(e.matrix * rep.generator(i));
      const bool longer = j < 0 || static_cast<int>(t.elements[static_cast<std::size_t>(j)].word.size()) > len;
      const Vector c = qr.solve(Vector(e.matrix * rep.v().col(i)));
      const bool in_cone = c.minCoeff() >= -1e-9 * std::max(1.0, c.cwiseAbs().maxCoeff());
      ++r.checked;
      if (longer != in_cone) r.disagreements.push_back({e.word, i, longer, in_cone});
    }
  }
  return r;
}

MembershipReport delta_membership_check(const ReflectionRep& rep, const std::vector<Vector>& samples,
                                        int depth) {
  require_independent_v(rep, "delta_membership_check");
  const Tiling t = orbit(rep, depth);
  const auto qr = rep.v().colPivHouseholderQr();
  const PolyCone delta = PolyCone::fundamental(rep);
  MembershipReport out;
  for (const auto& x : samples) {
    MembershipSample s;
    s.in_delta = delta.contains(x);
    s.screen_pass = true;
    for (std::size_t k = 0; k < t.elements.size(); ++k) {
      const Vector y = t.elements[k].matrix * x - x;
      const Vector c = qr.solve(y);
      const double scale = std::max({1.0, c.cwiseAbs().maxCoeff(), x.lpNorm<Eigen::Infinity>()});
      if (c.size() && c.minCoeff() < -1e-9 * scale) {
        s.screen_pass = false;
        s.refuted_by = static_cast<int>(k);
        break;
      }
    }
    if (s.in_delta && !s.screen_pass) ++out.violations;
    out.samples.push_back(s);
  }
  return out;
}

SigmaBoundaryResult sigma_boundary_test(const CartanMatrix& a, double tol) {
  if (!is_compatible(a)) throw PreconditionError("sigma_boundary_test: Cartan matrix not compatible");
  const auto& w = a.coxeter();
  if (!w.connected(w.generators())) throw PreconditionError("sigma_boundary_test: W is reducible");
  if (matrix_type(a).type != MatrixType::Negative)
    throw PreconditionError("sigma_boundary_test: Cartan matrix is not of negative type");
  const ReflectionRep rep = build_rep(a, numerical_rank(a.entries()).rank);

  SigmaBoundaryResult r;
  const int n = a.rank();
  auto spread = [&](VertexSet s) {
    const TypeReport tr = matrix_type(submatrix(a, s));
    Vector c = Vector::Zero(n);
    const auto idx = s.members();
    for (std::size_t k = 0; k < idx.size(); ++k) c(idx[k]) = tr.pf_vector(static_cast<Eigen::Index>(k));
    return c;
  };

  const IcResult ic = condition_ic(w);
  if (ic.holds) {
    r.touches_boundary = true;
    r.reason = "IC";
    r.support = ic.witness->first;
    r.stabilizer = ic.witness->second;
  } else {
    for_each_subset(w.rank(), w.generators(), [&](VertexSet s) {
      if (!w.connected(s) || matrix_type(submatrix(a, s)).type != MatrixType::Zero) return true;
      r.touches_boundary = true;
      r.reason = "ZT";
      r.support = s;
      r.stabilizer = s;
      return false;
    });
  }
  if (!r.touches_boundary) r.support = w.generators();
  r.coefficients = spread(r.support);
  r.point = rep.v() * r.coefficients;
  r.alpha_values = rep.alpha() * r.point;
  if (r.touches_boundary) {
    for (int i = 0; i < n; ++i) {
      const double ai = r.alpha_values(i);
      if (ai > tol || (r.stabilizer.contains(i) && std::abs(ai) > tol))
        throw NumericalError("sigma_boundary_test: witness fails alpha_" + std::to_string(i + 1) +
                             " = " + std::to_string(ai));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

double hilbert_distance(const std::vector<Eigen::Vector2d>& poly, const Eigen::Vector2d& y,
                        const Eigen::Vector2d& z) {
  const std::size_t k = poly.size();
  if (k < 3) throw PreconditionError("hilbert_distance: polygon needs at least 3 vertices");
  double area = 0.0;
  for (std::size_t i = 0; i < k; ++i) area += cross(poly[i], poly[(i + 1) % k]);
  if (area == 0.0) throw PreconditionError("hilbert_distance: degenerate polygon");
  const double orient = area > 0 ? 1.0 : -1.0;
  double scale = 0.0;
  for (const auto& p : poly) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps = 1e-12 * std::max(1.0, scale * scale);

  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::Vector2d e1 = poly[(i + 1) % k] - poly[i];
    const Eigen::Vector2d e2 = poly[(i + 2) % k] - poly[(i + 1) % k];
    if (orient * cross(e1, e2) < -eps) throw PreconditionError("hilbert_distance: polygon is not convex");
  }
  auto inside = [&](const Eigen::Vector2d& q) {
    for (std::size_t i = 0; i < k; ++i)
      if (orient * cross(poly[(i + 1) % k] - poly[i], q - poly[i]) <= eps) return false;
    return true;
  };
  if (!inside(y) || !inside(z))
    throw PreconditionError("hilbert_distance: point on or outside the boundary");
  const Eigen::Vector2d d = z - y;
  if (d.norm() == 0.0) return 0.0;

  double smin = -std::numeric_limits<double>::infinity();
  double smax = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::Vector2d e = poly[(i + 1) % k] - poly[i];
    const double f0 = orient * cross(e, y - poly[i]);
    const double b = orient * cross(e, d);
    if (b < 0) smax = std::min(smax, -f0 / b);
    else if (b > 0) smin = std::max(smin, -f0 / b);
  }
  return 0.5 * std::log(((1.0 - smin) / (-smin)) * (smax / (smax - 1.0)));
}

std::vector<int> tiles_containing(const Tiling& t, const Vector& x, double tol) {
  const auto n = t.v.rows();
  std::vector<Matrix> gens;
  for (Eigen::Index i = 0; i < t.alpha.rows(); ++i)
    gens.push_back(Matrix::Identity(n, n) - t.v.col(i) * t.alpha.row(i));
  std::vector<int> out;
  for (std::size_t k = 0; k < t.elements.size(); ++k) {
    Vector y = x;
    const Word& w = t.elements[k].word;
    // rho(gamma)^-1 = rho(reversed word) since generators are involutions.
    for (int i : w) y = gens[static_cast<std::size_t>(i)] * y;
    y /= std::max(y.lpNorm<Eigen::Infinity>(), std::numeric_limits<double>::min());
    if ((t.alpha * y).maxCoeff() < -tol) out.push_back(static_cast<int>(k));
  }
  return out;
}

}  // namespace coxcc
