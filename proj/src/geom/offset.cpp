#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "streetgen/errors.hpp"
#include "streetgen/geom/kernel.hpp"

namespace streetgen::geom {

namespace {

// Proper intersection of segments [a,b] and [c,d]; returns parameter on [a,b]
// or a negative value when they do not cross.
double seg_intersection_param(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const Vec2 r = b - a;
  const Vec2 s = d - c;
  const double denom = cross2(r, s);
  if (std::abs(denom) < 1e-15) return -1;
  const double t = cross2(c - a, s) / denom;
  const double u = cross2(c - a, r) / denom;
  if (t < -1e-12 || t > 1 + 1e-12 || u < -1e-12 || u > 1 + 1e-12) return -1;
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace

Polyline offset_curve(const Polyline& line, double d, double arc_tol) {
  if (!line.valid()) throw Error(ErrorCode::InvalidGeometry, "offset input polyline invalid");
  if (d == 0) return line;

  const double ad = std::abs(d);
  const double side = d > 0 ? 1.0 : -1.0;

  // Raw offset: every segment shifted sideways, gap-side corners bridged by
  // arcs around the source vertex. Overlap-side corners are left crossing and
  // trimmed below.
  std::vector<Vec2> raw;
  auto push = [&raw](const Vec2& p) {
    if (raw.empty() || (p - raw.back()).norm() > 1e-12) raw.push_back(p);
  };

  const auto& pts = line.pts;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec2 dir = (pts[i + 1] - pts[i]).normalized();
    const Vec2 n = side * ad * left_normal(dir);
    push(pts[i] + n);
    push(pts[i + 1] + n);
    if (i + 2 < pts.size()) {
      const Vec2 dir2 = (pts[i + 2] - pts[i + 1]).normalized();
      const double turn = cross2(dir, dir2);
      // Gap side: left offset at a right turn, right offset at a left turn.
      const bool gap = (d > 0 && turn < 0) || (d < 0 && turn > 0);
      if (gap && std::abs(turn) > 1e-12) {
        const Vec2 from = pts[i + 1] + n;
        const Vec2 to = pts[i + 1] + side * ad * left_normal(dir2);
        CircleArc arc;
        arc.center = pts[i + 1];
        arc.radius = ad;
        arc.start_angle = std::atan2(from.y() - arc.center.y(), from.x() - arc.center.x());
        arc.end_angle = std::atan2(to.y() - arc.center.y(), to.x() - arc.center.x());
        arc.orientation = d > 0 ? ArcOrientation::CW : ArcOrientation::CCW;
        for (const auto& p : arc_to_polyline(arc, arc_tol).pts) push(p);
      }
    }
  }
  if (raw.size() < 2) throw Error(ErrorCode::EmptyResult, "offset curve vanished");

  // Node the raw curve against itself, then drop every piece that dips closer
  // to the source line than the offset distance (minus the linearization
  // allowance): those pieces are the overlap-side corner loops.
  std::vector<Vec2> cleaned;
  const double keep_dist = ad - std::max(2 * arc_tol, 1e-9);
  auto keep_point = [&](const Vec2& p) { return closest_point(line, p).second >= keep_dist; };

  std::size_t nseg = raw.size() - 1;
  for (std::size_t i = 0; i < nseg; ++i) {
    std::vector<double> cuts = {0.0, 1.0};
    for (std::size_t j = 0; j < nseg; ++j) {
      if (j + 1 >= i && i + 1 >= j) continue;  // skip self and direct neighbors
      const double t = seg_intersection_param(raw[i], raw[i + 1], raw[j], raw[j + 1]);
      if (t >= 0) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (cuts[k + 1] - cuts[k] < 1e-12) continue;
      const Vec2 a = raw[i] + cuts[k] * (raw[i + 1] - raw[i]);
      const Vec2 b = raw[i] + cuts[k + 1] * (raw[i + 1] - raw[i]);
      if (!keep_point((a + b) / 2)) continue;
      if (cleaned.empty() || (a - cleaned.back()).norm() > 1e-9) cleaned.push_back(a);
      cleaned.push_back(b);
    }
  }

  std::vector<Vec2> dedup;
  for (const auto& p : cleaned)
    if (dedup.empty() || (p - dedup.back()).norm() > 1e-12) dedup.push_back(p);

  if (dedup.size() < 2) throw Error(ErrorCode::EmptyResult, "offset curve vanished");
  return Polyline{std::move(dedup)};
}

}  // namespace streetgen::geom
