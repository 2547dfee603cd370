#include "coxcc/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "coxcc/errors.hpp"

namespace coxcc {

std::vector<Eigen::Vector2d> clip_polygon(const Matrix& h, double r) {
  std::vector<Eigen::Vector2d> poly{{-r, -r}, {r, -r}, {r, r}, {-r, r}};
  for (Eigen::Index k = 0; k < h.rows() && !poly.empty(); ++k) {
    const double a = h(k, 0), b = h(k, 1), c = h(k, 2);
    auto f = [&](const Eigen::Vector2d& p) { return a * p.x() + b * p.y() + c; };
    std::vector<Eigen::Vector2d> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Eigen::Vector2d& p = poly[i];
      const Eigen::Vector2d& q = poly[(i + 1) % poly.size()];
      const double fp = f(p), fq = f(q);
      if (fp <= 0) out.push_back(p);
      if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) out.push_back(p + (fp / (fp - fq)) * (q - p));
    }
    poly = std::move(out);
  }
  return poly;
}

namespace {

double area(const std::vector<Eigen::Vector2d>& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % p.size()];
    s += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * std::abs(s);
}

std::vector<Eigen::Vector2d> convex_hull(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  if (pts.size() < 3) return pts;
  auto turn = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Eigen::Vector2d> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

struct Piece {
  std::vector<Eigen::Vector2d> poly;
  int length = 0;
  bool sigma = false;
};

}  // namespace

RenderResult render_svg(const Tiling& tiling, const ChartSpec& chart) {
  const auto n = tiling.v.rows();
  if (tiling.depth > kMaxRenderDepth)
    throw BudgetError("render depth capped at " + std::to_string(kMaxRenderDepth));
  Matrix slice;
  if (chart.slice) {
    slice = *chart.slice;
    if (slice.rows() != n || slice.cols() != 3)
      throw PreconditionError("unsupported dimension: slice must be n x 3");
  } else if (n == 3) {
    slice = Matrix::Identity(3, 3);
  } else {
    throw PreconditionError("unsupported dimension: n = " + std::to_string(n) +
                            (n == 4 ? " needs a 3-dimensional slice" : ""));
  }
  if (n != 3 && n != 4) throw PreconditionError("unsupported dimension: n = " + std::to_string(n));

  const Matrix walls = tiling.alpha * slice;  // N x 3
  Eigen::Vector3d phi;
  if (chart.covector) {
    if (chart.covector->size() != 3) throw PreconditionError("chart covector must have 3 entries");
    phi = *chart.covector;
  } else {
    phi = -walls.colwise().sum().transpose();
  }
  if (phi.norm() < 1e-12) throw PreconditionError("degenerate chart: covector vanishes");
  Eigen::JacobiSVD<Matrix> svd(Matrix(phi.transpose()), Eigen::ComputeFullV);
  const Eigen::Vector3d e1 = svd.matrixV().col(1), e2 = svd.matrixV().col(2);
  const Eigen::Vector3d p0 = phi / phi.squaredNorm();

  std::vector<Matrix> gens;
  for (Eigen::Index i = 0; i < tiling.alpha.rows(); ++i)
    gens.push_back(Matrix::Identity(n, n) - tiling.v.col(i) * tiling.alpha.row(i));

  RenderResult res;
  const double r = chart.clip_radius;
  auto to_halfplanes = [&](const Matrix& cov) {  // cov: k x 3 in slice coords
    Matrix h(cov.rows(), 3);
    for (Eigen::Index k = 0; k < cov.rows(); ++k)
      h.row(k) << cov.row(k).dot(e1), cov.row(k).dot(e2), cov.row(k).dot(p0);
    return h;
  };
  auto touches_box = [&](const std::vector<Eigen::Vector2d>& p) {
    for (const auto& q : p)
      if (std::abs(q.x()) >= r * (1 - 1e-12) || std::abs(q.y()) >= r * (1 - 1e-12)) return true;
    return false;
  };

  std::vector<Piece> pieces;
  for (const auto& e : tiling.elements) {
    Matrix inv = Matrix::Identity(n, n);
    for (auto it = e.word.rbegin(); it != e.word.rend(); ++it) inv = inv * gens[static_cast<std::size_t>(*it)];
    const Matrix h = to_halfplanes(tiling.alpha * inv * slice);
    bool cut = false;
    for (double sgn : {1.0, -1.0}) {
      auto p = clip_polygon(sgn * h, r);
      if (p.size() < 3 || area(p) < 1e-12) continue;
      cut = cut || touches_box(p) || sgn < 0;
      pieces.push_back({std::move(p), static_cast<int>(e.word.size()), false});
    }
    if (cut) ++res.clipped;
    ++res.tiles;
  }
  if (res.clipped > 0)
    res.warnings.push_back(std::to_string(res.clipped) +
                           " tile(s) cross the chart's line at infinity or the clip box; drawn clipped");

  // Sigma = Delta ∩ span+(v), when v is a basis of the drawn slice.
  const Matrix vs = tiling.v;
  if (n == 3 && vs.cols() == 3 && numerical_rank(vs).rank == 3) {
    Matrix cov(tiling.alpha.rows() + 3, 3);
    cov << walls, -Matrix(vs.inverse());
    auto p = clip_polygon(to_halfplanes(cov), r);
    if (p.size() >= 3) pieces.push_back({std::move(p), 0, true});
  } else {
    res.warnings.push_back("Sigma not drawn: v_j do not form a basis of the slice");
  }

  std::vector<Eigen::Vector2d> cloud;
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
  for (const auto& pc : pieces)
    for (const auto& q : pc.poly) {
      lo_x = std::min(lo_x, q.x());
      hi_x = std::max(hi_x, q.x());
      lo_y = std::min(lo_y, q.y());
      hi_y = std::max(hi_y, q.y());
      if (!pc.sigma && std::abs(q.x()) < r * (1 - 1e-12) && std::abs(q.y()) < r * (1 - 1e-12))
        cloud.push_back(q);
    }
  if (pieces.empty()) lo_x = lo_y = -1, hi_x = hi_y = 1;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double px = chart.pixels;
  auto map = [&](const Eigen::Vector2d& q) {
    return Eigen::Vector2d((q.x() - lo_x) / span * px, (hi_y - q.y()) / span * px);
  };

  std::string s;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" height=\"%d\" ",
                chart.pixels, chart.pixels);
  s += buf;
  std::snprintf(buf, sizeof buf, "viewBox=\"-10 -10 %d %d\">\n", chart.pixels + 20, chart.pixels + 20);
  s += buf;
  std::snprintf(buf, sizeof buf, "<!-- tiles: %d depth: %d -->\n", res.tiles, tiling.depth);
  s += buf;
  auto polygon = [&](const std::vector<Eigen::Vector2d>& poly, const char* fill, const char* extra) {
    s += "<polygon points=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto m = map(poly[i]);
      std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", m.x(), m.y());
      s += buf;
    }
    s += "\" fill=\"";
    s += fill;
    s += "\" stroke=\"#1b2a41\" stroke-width=\"0.6\"";
    s += extra;
    s += "/>\n";
  };
  s += "<g id=\"tiles\">\n";
  for (const auto& pc : pieces) {
    if (pc.sigma) continue;
    const char* fill = pc.length == 0 ? "#f4d03f" : (pc.length % 2 ? "#c5d3e8" : "#e6ecf5");
    polygon(pc.poly, fill, "");
  }
  s += "</g>\n<g id=\"sigma\">\n";
  for (const auto& pc : pieces)
    if (pc.sigma) polygon(pc.poly, "#c0392b", " fill-opacity=\"0.55\"");
  s += "</g>\n";
  const auto hull = convex_hull(cloud);
  if (hull.size() >= 3) {
    s += "<g id=\"boundary\">\n";
    s += "<polygon points=\"";
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const auto m = map(hull[i]);
      std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", m.x(), m.y());
      s += buf;
    }
    s += "\" fill=\"none\" stroke=\"#7f8c8d\" stroke-width=\"1.2\" stroke-dasharray=\"4 3\"/>\n</g>\n";
  }
  s += "</svg>\n";
  res.svg = std::move(s);
  return res;
}

}  // namespace coxcc
