#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

namespace streetgen::geom {

using Vec2 = Eigen::Vector2d;

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Left-hand normal of a direction vector.
inline Vec2 left_normal(const Vec2& dir) { return Vec2(-dir.y(), dir.x()); }

inline Vec2 rotated(const Vec2& v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return Vec2(c * v.x() - s * v.y(), s * v.x() + c * v.y());
}

// Open chain of >= 2 vertices, no two consecutive vertices identical.
struct Polyline {
  std::vector<Vec2> pts;

  Polyline() = default;
  explicit Polyline(std::vector<Vec2> p) : pts(std::move(p)) {}
  Polyline(std::initializer_list<Vec2> p) : pts(p) {}

  std::size_t size() const { return pts.size(); }
  bool empty() const { return pts.empty(); }
  const Vec2& front() const { return pts.front(); }
  const Vec2& back() const { return pts.back(); }
  const Vec2& operator[](std::size_t i) const { return pts[i]; }
  Vec2& operator[](std::size_t i) { return pts[i]; }

  double length() const {
    double s = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) s += (pts[i] - pts[i - 1]).norm();
    return s;
  }

  Polyline reversed() const {
    Polyline r;
    r.pts.assign(pts.rbegin(), pts.rend());
    return r;
  }

  bool valid() const {
    if (pts.size() < 2) return false;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if ((pts[i] - pts[i - 1]).squaredNorm() == 0) return false;
    return length() > 0;
  }
};

// Ring: closed vertex loop, first == last.
using Ring = std::vector<Vec2>;

double ring_signed_area(const Ring& ring);

// Exterior ring counter-clockwise, holes clockwise, all rings closed.
struct Polygon {
  Ring outer;
  std::vector<Ring> holes;

  double area() const {
    double a = ring_signed_area(outer);
    for (const auto& h : holes) a += ring_signed_area(h);
    return a;
  }
};

using PolygonSet = std::vector<Polygon>;

inline double total_area(const PolygonSet& set) {
  double a = 0;
  for (const auto& p : set) a += p.area();
  return a;
}

enum class ArcOrientation { CW, CCW };

// Circular arc; swept angle measured along `orientation` lies in (0, 2*pi].
struct CircleArc {
  Vec2 center;
  double radius = 0;
  double start_angle = 0;
  double end_angle = 0;
  ArcOrientation orientation = ArcOrientation::CCW;

  double swept_angle() const;
  Vec2 point_at(double angle) const {
    return center + radius * Vec2(std::cos(angle), std::sin(angle));
  }
  Vec2 start_point() const { return point_at(start_angle); }
  Vec2 end_point() const { return point_at(end_angle); }
};

// Polyline with one buffer radius per vertex, varying linearly in between.
struct VariableWidthPolyline {
  std::vector<Vec2> vertices;
  std::vector<double> radii;

  bool valid() const {
    if (vertices.empty() || vertices.size() != radii.size()) return false;
    for (double r : radii)
      if (r < 0) return false;
    for (double r : radii)
      if (r > 0) return true;
    return false;
  }
};

}  // namespace streetgen::geom
