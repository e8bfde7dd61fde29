#pragma once

// Test-only reference computations, independent of the library code paths
// they are used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "streetgen/geom/types.hpp"

namespace oracles {

using streetgen::geom::Vec2;

struct Box {
  double x0, y0, x1, y1;
};

// Area of {p : inside(p)} estimated by counting cell centres on a regular grid.
inline double rasterized_area(const std::function<bool(const Vec2&)>& inside, Box box,
                              double step) {
  long long count = 0;
  for (double y = box.y0 + step / 2; y < box.y1; y += step)
    for (double x = box.x0 + step / 2; x < box.x1; x += step)
      if (inside(Vec2(x, y))) ++count;
  return static_cast<double>(count) * step * step;
}

inline double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + t * ab)).norm();
}

inline double dist_point_polyline(const Vec2& p, const std::vector<Vec2>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    best = std::min(best, dist_point_segment(p, pts[i], pts[i + 1]));
  return best;
}

// Planar-arrangement reference: rasterize the segments, flood-fill from the
// outside, then count and measure the enclosed 4-connected regions.
struct ArrangementStats {
  int bounded_faces = 0;
  double bounded_area = 0;
};

inline ArrangementStats arrangement_oracle(const std::vector<std::vector<Vec2>>& parts,
                                           double step) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const auto& part : parts)
    for (const auto& p : part) {
      x0 = std::min(x0, p.x());
      y0 = std::min(y0, p.y());
      x1 = std::max(x1, p.x());
      y1 = std::max(y1, p.y());
    }
  x0 -= 4 * step;
  y0 -= 4 * step;
  x1 += 4 * step;
  y1 += 4 * step;
  const int nx = static_cast<int>(std::ceil((x1 - x0) / step));
  const int ny = static_cast<int>(std::ceil((y1 - y0) / step));
  // 0 free, 1 wall, 2 outside
  std::vector<unsigned char> grid(static_cast<std::size_t>(nx) * ny, 0);
  auto at = [&](int ix, int iy) -> unsigned char& {
    return grid[static_cast<std::size_t>(iy) * nx + ix];
  };
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const Vec2 c(x0 + (ix + 0.5) * step, y0 + (iy + 0.5) * step);
      // 0.51 keeps the wall band watertight under 4-connected flood fill
      // while staying as thin as possible.
      for (const auto& part : parts)
        if (dist_point_polyline(c, part) <= step * 0.51) {
          at(ix, iy) = 1;
          break;
        }
    }
  std::queue<std::pair<int, int>> q;
  q.push({0, 0});
  at(0, 0) = 2;
  while (!q.empty()) {
    auto [ix, iy] = q.front();
    q.pop();
    const int dx[] = {1, -1, 0, 0};
    const int dy[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int jx = ix + dx[k], jy = iy + dy[k];
      if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
      if (at(jx, jy) != 0) continue;
      at(jx, jy) = 2;
      q.push({jx, jy});
    }
  }
  ArrangementStats stats;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      if (at(ix, iy) != 0) continue;
      ++stats.bounded_faces;
      long long cells = 0;
      std::queue<std::pair<int, int>> fq;
      fq.push({ix, iy});
      at(ix, iy) = 3;
      while (!fq.empty()) {
        auto [cx, cy] = fq.front();
        fq.pop();
        ++cells;
        const int dx[] = {1, -1, 0, 0};
        const int dy[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int jx = cx + dx[k], jy = cy + dy[k];
          if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
          if (at(jx, jy) != 0) continue;
          at(jx, jy) = 3;
          fq.push({jx, jy});
        }
      }
      stats.bounded_area += static_cast<double>(cells) * step * step;
    }
  return stats;
}

}  // namespace oracles
