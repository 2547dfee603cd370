#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxcc/geometry.hpp"

namespace coxcc {

inline constexpr int kMaxRenderDepth = 10;

struct ChartSpec {
  // n x 3 basis of the slice to draw; required when n = 4.
  std::optional<Matrix> slice;
  // Covector (in slice coordinates) whose level set 1 is the chart. Defaults
  // to -(sum of the walls), positive on the fundamental cone of negative type.
  std::optional<Vector> covector;
  double clip_radius = 25.0;
  int pixels = 800;
};

struct RenderResult {
  std::string svg;
  int tiles = 0;        // orbit elements drawn
  int clipped = 0;      // tiles cut by the clip box or the line at infinity
  std::vector<std::string> warnings;
};

RenderResult render_svg(const Tiling& tiling, const ChartSpec& chart = {});

// Convex polygon {p : a.row(k) . (p, 1) <= 0} cut out of the square of
// half-width r. Exposed for tests.
std::vector<Eigen::Vector2d> clip_polygon(const Matrix& halfplanes, double r);

}  // namespace coxcc
