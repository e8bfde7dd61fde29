#pragma once

#include <utility>
#include <vector>

#include "streetgen/geom/types.hpp"

namespace streetgen::geom {

// Chord deviation bound used whenever an arc or a buffer boundary is
// linearized into segments.
inline constexpr double kDefaultArcTolerance = 0.01;

// Coordinate grid the boolean / build_area inputs are snapped to.
inline constexpr double kDefaultSnapGrid = 1e-6;

enum class BoolOp { Union, Intersection, Difference };

// Region within distance d of the line (round caps and joins).
Polygon buffer(const Polyline& line, double d, double arc_tol = kDefaultArcTolerance);

// Disk polygonized at the given tolerance.
Polygon disk(const Vec2& center, double r, double arc_tol = kDefaultArcTolerance);

// Region of poly at distance >= d from its boundary; may be empty or split.
PolygonSet shrink(const Polygon& poly, double d, double arc_tol = kDefaultArcTolerance);

// Union of per-vertex disks and per-segment isosceles trapezoids.
Polygon variable_buffer(const VariableWidthPolyline& vline,
                        double arc_tol = kDefaultArcTolerance);

// Curve at constant signed distance d from the line (positive = left of the
// walking direction); round joins on the gap side, overlaps trimmed away.
Polyline offset_curve(const Polyline& line, double d, double arc_tol = kDefaultArcTolerance);

PolygonSet boolean(const PolygonSet& a, const PolygonSet& b, BoolOp op,
                   double snap_grid = kDefaultSnapGrid);

// Nodes all linework at mutual intersections and emits every maximal
// enclosed face as a polygon. Unclosed linework contributes no face.
PolygonSet build_area(const std::vector<Polyline>& parts, double snap_grid = kDefaultSnapGrid);

// Closest point and its distance; ties broken by smallest curvilinear abscissa.
std::pair<Vec2, double> closest_point(const Polyline& line, const Vec2& p);
std::pair<Vec2, double> closest_point(const Polygon& poly, const Vec2& p);

// Curvilinear abscissa of the closest point on the line.
double locate_along(const Polyline& line, const Vec2& p);

// Point at abscissa s in [0, length].
Vec2 interpolate(const Polyline& line, double s);

// Unit tangent of the segment containing abscissa s.
Vec2 tangent_at(const Polyline& line, double s);

// Portion of the line between abscissae s0 < s1, endpoints interpolated.
Polyline sub_polyline(const Polyline& line, double s0, double s1);

// Circle through three non-collinear points.
std::pair<Vec2, double> fit_circle_3pts(const Vec2& p1, const Vec2& p2, const Vec2& p3);

// n_samples points of the quadratic Bezier through (p0, c, p1); endpoints exact.
Polyline bezier_quadratic(const Vec2& p0, const Vec2& c, const Vec2& p1, int n_samples);

// Chord deviation from the true arc <= tol; endpoints exact; at least four
// segments per full circle however coarse the tolerance.
Polyline arc_to_polyline(const CircleArc& arc, double tol);

// Segments needed so a full circle of radius r stays within chord error tol.
int segments_per_circle(double r, double tol);

bool point_in_polygon(const Polygon& poly, const Vec2& p);

}  // namespace streetgen::geom
