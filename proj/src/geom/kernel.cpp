#include "streetgen/geom/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "boost_glue.hpp"
#include "streetgen/errors.hpp"

namespace streetgen::geom {

namespace {

constexpr double kPi = std::numbers::pi;

using detail::BLine;
using detail::BMulti;
using detail::BPolygon;
namespace bg = detail::bg;

PolygonSet buffer_multi(const BLine& bline, double d, double arc_tol) {
  const int n = segments_per_circle(d, arc_tol);
  bg::strategy::buffer::distance_symmetric<double> dist(d);
  bg::strategy::buffer::side_straight side;
  bg::strategy::buffer::join_round join(n);
  bg::strategy::buffer::end_round end(n);
  bg::strategy::buffer::point_circle circle(n);
  BMulti out;
  bg::buffer(bline, out, dist, side, join, end, circle);
  return detail::from_bmulti(out);
}

double snap_to(double v, double grid) { return std::round(v / grid) * grid; }

PolygonSet snapped(const PolygonSet& set, double grid) {
  PolygonSet out = set;
  for (auto& poly : out) {
    for (auto& p : poly.outer) p = Vec2(snap_to(p.x(), grid), snap_to(p.y(), grid));
    for (auto& h : poly.holes)
      for (auto& p : h) p = Vec2(snap_to(p.x(), grid), snap_to(p.y(), grid));
  }
  return out;
}

bool point_in_ring(const Ring& ring, const Vec2& p) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

double ring_signed_area(const Ring& ring) {
  double a = 0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) a += cross2(ring[i], ring[i + 1]);
  return a / 2;
}

double CircleArc::swept_angle() const {
  double sweep = orientation == ArcOrientation::CCW ? end_angle - start_angle
                                                    : start_angle - end_angle;
  sweep = std::fmod(sweep, 2 * kPi);
  if (sweep <= 0) sweep += 2 * kPi;
  return sweep;
}

int segments_per_circle(double r, double tol) {
  if (tol >= r) return 8;
  const double max_step = 2 * std::acos(1.0 - tol / r);
  int n = static_cast<int>(std::ceil(2 * kPi / max_step));
  return std::clamp(n, 8, 4096);
}

Polygon buffer(const Polyline& line, double d, double arc_tol) {
  if (!(d > 0)) throw Error(ErrorCode::InvalidParameter, "buffer distance must be positive");
  if (!line.valid()) throw Error(ErrorCode::InvalidGeometry, "buffer input polyline invalid");
  PolygonSet parts = buffer_multi(detail::to_bline(line), d, arc_tol);
  if (parts.empty())
    throw Error(ErrorCode::InternalInconsistency, "buffer produced no polygon");
  // A connected line buffers to one connected region; keep the largest part
  // in case of numeric crumbs.
  auto best = std::max_element(parts.begin(), parts.end(),
                               [](const Polygon& a, const Polygon& b) { return a.area() < b.area(); });
  return *best;
}

Polygon disk(const Vec2& center, double r, double arc_tol) {
  if (!(r > 0)) throw Error(ErrorCode::InvalidParameter, "disk radius must be positive");
  const int n = segments_per_circle(r, arc_tol);
  // Mean of inscribed and circumscribed radius: boundary stays within half a
  // sagitta of the true circle and the polygon area error nearly cancels.
  const double rp = r * (1 + 1 / std::cos(kPi / n)) / 2;
  Polygon out;
  out.outer.reserve(n + 1);
  for (int i = 0; i < n; ++i) {
    const double a = 2 * kPi * i / n;
    out.outer.emplace_back(center.x() + rp * std::cos(a), center.y() + rp * std::sin(a));
  }
  out.outer.push_back(out.outer.front());
  return out;
}

PolygonSet shrink(const Polygon& poly, double d, double arc_tol) {
  if (!(d > 0)) throw Error(ErrorCode::InvalidParameter, "shrink distance must be positive");
  // Erosion as a set identity: points of poly at distance >= d from the
  // boundary are poly minus the buffered boundary rings.
  PolygonSet boundary_zone;
  auto widen_ring = [&](const Ring& ring) {
    Polyline as_line{std::vector<Vec2>(ring.begin(), ring.end())};
    PolygonSet parts = buffer_multi(detail::to_bline(as_line), d, arc_tol);
    boundary_zone.insert(boundary_zone.end(), parts.begin(), parts.end());
  };
  widen_ring(poly.outer);
  for (const auto& h : poly.holes) widen_ring(h);
  return boolean({poly}, boundary_zone, BoolOp::Difference);
}

Polygon variable_buffer(const VariableWidthPolyline& vline, double arc_tol) {
  if (!vline.valid())
    throw Error(ErrorCode::DegenerateInput, "variable buffer needs at least one positive radius");
  PolygonSet pieces;
  for (std::size_t i = 0; i < vline.vertices.size(); ++i)
    if (vline.radii[i] > 0) pieces.push_back(disk(vline.vertices[i], vline.radii[i], arc_tol));
  for (std::size_t i = 0; i + 1 < vline.vertices.size(); ++i) {
    const Vec2& a = vline.vertices[i];
    const Vec2& b = vline.vertices[i + 1];
    const double ra = vline.radii[i], rb = vline.radii[i + 1];
    const Vec2 dir = b - a;
    if (dir.squaredNorm() == 0 || (ra == 0 && rb == 0)) continue;
    const Vec2 n = left_normal(dir.normalized());
    Ring quad;
    quad.push_back(a + ra * n);
    quad.push_back(a - ra * n);
    quad.push_back(b - rb * n);
    quad.push_back(b + rb * n);
    // Degenerate sides (zero radius) collapse two corners into one.
    Ring ring;
    for (const auto& p : quad)
      if (ring.empty() || (p - ring.back()).norm() > 1e-12) ring.push_back(p);
    if (ring.size() < 3) continue;
    if (ring_signed_area(ring) < 0) std::reverse(ring.begin(), ring.end());
    ring.push_back(ring.front());
    pieces.push_back(Polygon{std::move(ring), {}});
  }
  if (pieces.empty())
    throw Error(ErrorCode::DegenerateInput, "variable buffer produced no primitive");
  PolygonSet merged = boolean(pieces, {}, BoolOp::Union);
  if (merged.empty())
    throw Error(ErrorCode::InternalInconsistency, "variable buffer union vanished");
  auto best = std::max_element(merged.begin(), merged.end(),
                               [](const Polygon& a, const Polygon& b) { return a.area() < b.area(); });
  return *best;
}

namespace {

// Members of a PolygonSet may overlap; fold them into one disjoint
// multi-polygon before any binary operation.
BMulti dissolve(const PolygonSet& set, double snap_grid) {
  std::vector<BMulti> round;
  for (const auto& poly : snapped(set, snap_grid)) {
    BMulti m;
    m.push_back(detail::to_bpolygon(poly));
    bg::correct(m);
    bg::unique(m);
    std::string reason;
    if (!bg::is_valid(m, reason))
      throw Error(ErrorCode::InvalidGeometry, "boolean input: " + reason);
    round.push_back(std::move(m));
  }
  while (round.size() > 1) {
    std::vector<BMulti> next;
    for (std::size_t i = 0; i + 1 < round.size(); i += 2) {
      BMulti merged;
      bg::union_(round[i], round[i + 1], merged);
      next.push_back(std::move(merged));
    }
    if (round.size() % 2) next.push_back(std::move(round.back()));
    round = std::move(next);
  }
  return round.empty() ? BMulti{} : std::move(round.front());
}

}  // namespace

PolygonSet boolean(const PolygonSet& a, const PolygonSet& b, BoolOp op, double snap_grid) {
  BMulti ma = dissolve(a, snap_grid);
  BMulti mb = dissolve(b, snap_grid);
  BMulti out;
  switch (op) {
    case BoolOp::Union:
      bg::union_(ma, mb, out);
      break;
    case BoolOp::Intersection:
      bg::intersection(ma, mb, out);
      break;
    case BoolOp::Difference:
      bg::difference(ma, mb, out);
      break;
  }
  return detail::from_bmulti(out);
}

std::pair<Vec2, double> closest_point(const Polyline& line, const Vec2& p) {
  if (line.size() < 1) throw Error(ErrorCode::InvalidGeometry, "closest_point on empty line");
  double best_d2 = std::numeric_limits<double>::infinity();
  Vec2 best = line.pts.front();
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const Vec2& a = line[i];
    const Vec2& b = line[i + 1];
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    const Vec2 q = a + t * ab;
    const double d2 = (p - q).squaredNorm();
    // Strict improvement keeps the smallest-abscissa candidate on ties.
    if (d2 < best_d2) {
      best_d2 = d2;
      best = q;
    }
  }
  return {best, std::sqrt(best_d2)};
}

std::pair<Vec2, double> closest_point(const Polygon& poly, const Vec2& p) {
  auto ring_line = [](const Ring& r) { return Polyline{std::vector<Vec2>(r.begin(), r.end())}; };
  auto best = closest_point(ring_line(poly.outer), p);
  for (const auto& h : poly.holes) {
    auto cand = closest_point(ring_line(h), p);
    if (cand.second < best.second) best = cand;
  }
  return best;
}

double locate_along(const Polyline& line, const Vec2& p) {
  double best_d2 = std::numeric_limits<double>::infinity();
  double best_s = 0;
  double cum = 0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const Vec2& a = line[i];
    const Vec2& b = line[i + 1];
    const Vec2 ab = b - a;
    const double len = ab.norm();
    const double len2 = len * len;
    double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    const Vec2 q = a + t * ab;
    const double d2 = (p - q).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best_s = cum + t * len;
    }
    cum += len;
  }
  return best_s;
}

Vec2 interpolate(const Polyline& line, double s) {
  const double total = line.length();
  if (s < -1e-12 || s > total + 1e-12)
    throw Error(ErrorCode::InvalidParameter, "interpolate abscissa out of range");
  s = std::clamp(s, 0.0, total);
  double cum = 0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const double len = (line[i + 1] - line[i]).norm();
    if (s <= cum + len || i + 2 == line.size()) {
      const double t = len > 0 ? std::clamp((s - cum) / len, 0.0, 1.0) : 0.0;
      return line[i] + t * (line[i + 1] - line[i]);
    }
    cum += len;
  }
  return line.back();
}

Vec2 tangent_at(const Polyline& line, double s) {
  const double total = line.length();
  s = std::clamp(s, 0.0, total);
  double cum = 0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const double len = (line[i + 1] - line[i]).norm();
    if (s <= cum + len || i + 2 == line.size()) {
      if (len > 0) return (line[i + 1] - line[i]) / len;
    }
    cum += len;
  }
  return Vec2(1, 0);
}

Polyline sub_polyline(const Polyline& line, double s0, double s1) {
  const double total = line.length();
  s0 = std::clamp(s0, 0.0, total);
  s1 = std::clamp(s1, 0.0, total);
  if (!(s1 > s0))
    throw Error(ErrorCode::InvalidParameter, "sub_polyline needs s0 < s1");
  Polyline out;
  out.pts.push_back(interpolate(line, s0));
  double cum = 0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const double len = (line[i + 1] - line[i]).norm();
    const double v_abscissa = cum + len;
    if (v_abscissa > s0 && v_abscissa < s1) {
      const Vec2& v = line[i + 1];
      if ((v - out.pts.back()).norm() > 1e-12) out.pts.push_back(v);
    }
    cum = v_abscissa;
    if (cum >= s1) break;
  }
  const Vec2 last = interpolate(line, s1);
  if ((last - out.pts.back()).norm() > 1e-12)
    out.pts.push_back(last);
  else if (out.pts.size() < 2)
    out.pts.push_back(last);
  return out;
}

std::pair<Vec2, double> fit_circle_3pts(const Vec2& p1, const Vec2& p2, const Vec2& p3) {
  const Vec2 a = p2 - p1;
  const Vec2 b = p3 - p1;
  const double denom = 2 * cross2(a, b);
  const double scale = std::max({a.norm(), b.norm(), (p3 - p2).norm()});
  if (std::abs(denom) < 1e-12 * scale * scale || scale == 0)
    throw Error(ErrorCode::NoCircle, "points are collinear");
  const double a2 = a.squaredNorm();
  const double b2 = b.squaredNorm();
  const Vec2 center = p1 + Vec2(b.y() * a2 - a.y() * b2, a.x() * b2 - b.x() * a2) / denom;
  return {center, (center - p1).norm()};
}

Polyline bezier_quadratic(const Vec2& p0, const Vec2& c, const Vec2& p1, int n_samples) {
  if (n_samples < 2)
    throw Error(ErrorCode::InvalidParameter, "bezier needs at least two samples");
  Polyline out;
  out.pts.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double t = static_cast<double>(i) / (n_samples - 1);
    if (i == 0) {
      out.pts.push_back(p0);
    } else if (i == n_samples - 1) {
      out.pts.push_back(p1);
    } else {
      const double u = 1 - t;
      out.pts.push_back(u * u * p0 + 2 * u * t * c + t * t * p1);
    }
  }
  return out;
}

Polyline arc_to_polyline(const CircleArc& arc, double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidParameter, "arc tolerance must be positive");
  const double sweep = arc.swept_angle();
  double max_step = 2 * kPi;
  if (tol < arc.radius) max_step = 2 * std::acos(1.0 - tol / arc.radius);
  max_step = std::min(max_step, kPi / 2);  // floor rule: >= 4 segments per circle
  const int n = std::max(1, static_cast<int>(std::ceil(sweep / max_step)));
  const double sign = arc.orientation == ArcOrientation::CCW ? 1.0 : -1.0;
  Polyline out;
  out.pts.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double a = arc.start_angle + sign * sweep * i / n;
    out.pts.push_back(arc.point_at(a));
  }
  out.pts.front() = arc.start_point();
  out.pts.back() = arc.end_point();
  return out;
}

bool point_in_polygon(const Polygon& poly, const Vec2& p) {
  if (!point_in_ring(poly.outer, p)) return false;
  for (const auto& h : poly.holes)
    if (point_in_ring(h, p)) return false;
  return true;
}

}  // namespace streetgen::geom
