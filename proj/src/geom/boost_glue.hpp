#pragma once

// Internal bridge between the public geometry types and Boost.Geometry,
// which backs the buffer and boolean primitives. Not installed.

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/linestring.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "streetgen/geom/types.hpp"

namespace streetgen::geom::detail {

namespace bg = boost::geometry;

using BPoint = bg::model::d2::point_xy<double>;
using BLine = bg::model::linestring<BPoint>;
// Counter-clockwise, closed: matches the Polygon ring conventions.
using BPolygon = bg::model::polygon<BPoint, false, true>;
using BMulti = bg::model::multi_polygon<BPolygon>;

inline BPoint to_bpoint(const Vec2& p) { return BPoint(p.x(), p.y()); }
inline Vec2 to_vec2(const BPoint& p) { return Vec2(p.x(), p.y()); }

BLine to_bline(const Polyline& line);
BPolygon to_bpolygon(const Polygon& poly);
BMulti to_bmulti(const PolygonSet& set);
PolygonSet from_bmulti(const BMulti& multi);

}  // namespace streetgen::geom::detail
