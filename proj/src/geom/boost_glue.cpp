#include "boost_glue.hpp"

namespace streetgen::geom::detail {

BLine to_bline(const Polyline& line) {
  BLine out;
  out.reserve(line.size());
  for (const auto& p : line.pts) out.push_back(to_bpoint(p));
  return out;
}

BPolygon to_bpolygon(const Polygon& poly) {
  BPolygon out;
  for (const auto& p : poly.outer) out.outer().push_back(to_bpoint(p));
  out.inners().resize(poly.holes.size());
  for (std::size_t i = 0; i < poly.holes.size(); ++i)
    for (const auto& p : poly.holes[i]) out.inners()[i].push_back(to_bpoint(p));
  bg::correct(out);
  return out;
}

BMulti to_bmulti(const PolygonSet& set) {
  BMulti out;
  out.reserve(set.size());
  for (const auto& p : set) out.push_back(to_bpolygon(p));
  return out;
}

PolygonSet from_bmulti(const BMulti& multi) {
  PolygonSet out;
  out.reserve(multi.size());
  for (const auto& bp : multi) {
    Polygon p;
    for (const auto& q : bp.outer()) p.outer.push_back(to_vec2(q));
    for (const auto& inner : bp.inners()) {
      Ring h;
      for (const auto& q : inner) h.push_back(to_vec2(q));
      p.holes.push_back(std::move(h));
    }
    if (ring_signed_area(p.outer) > 1e-12) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace streetgen::geom::detail
