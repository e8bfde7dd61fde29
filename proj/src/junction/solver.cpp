#include "streetgen/junction/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "streetgen/errors.hpp"

namespace streetgen::junc {

using geom::CircleArc;
using geom::cross2;
using geom::Polyline;
using geom::Vec2;

namespace {

constexpr double kNodeFootprintTol = 1e-6;

std::vector<Polyline> boundary_rings(const geom::Polygon& poly) {
  std::vector<Polyline> rings;
  rings.push_back(Polyline{std::vector<Vec2>(poly.outer.begin(), poly.outer.end())});
  for (const auto& h : poly.holes)
    rings.push_back(Polyline{std::vector<Vec2>(h.begin(), h.end())});
  return rings;
}

// Candidate intersection points between two ring sets; collinear overlap
// pieces contribute their point closest to jc.
std::vector<Vec2> ring_intersections(const std::vector<Polyline>& r1,
                                     const std::vector<Polyline>& r2, const Vec2& jc) {
  std::vector<Vec2> out;
  for (const auto& ring1 : r1) {
    for (const auto& ring2 : r2) {
      for (std::size_t i = 0; i + 1 < ring1.size(); ++i) {
        const Vec2& a = ring1[i];
        const Vec2& b = ring1[i + 1];
        const Vec2 r = b - a;
        for (std::size_t j = 0; j + 1 < ring2.size(); ++j) {
          const Vec2& c = ring2[j];
          const Vec2& d = ring2[j + 1];
          const Vec2 s = d - c;
          const double denom = cross2(r, s);
          const Vec2 qp = c - a;
          if (std::abs(denom) > 1e-14) {
            const double t = cross2(qp, s) / denom;
            const double u = cross2(qp, r) / denom;
            if (t >= -1e-9 && t <= 1 + 1e-9 && u >= -1e-9 && u <= 1 + 1e-9)
              out.push_back(a + std::clamp(t, 0.0, 1.0) * r);
          } else if (std::abs(cross2(qp, r)) <= 1e-9 * r.norm()) {
            // collinear: overlap interval, closest point to jc
            const double rlen2 = r.squaredNorm();
            double t0 = (c - a).dot(r) / rlen2;
            double t1 = (d - a).dot(r) / rlen2;
            if (t0 > t1) std::swap(t0, t1);
            t0 = std::max(t0, 0.0);
            t1 = std::min(t1, 1.0);
            if (t0 <= t1) {
              const double tj = std::clamp((jc - a).dot(r) / rlen2, t0, t1);
              out.push_back(a + tj * r);
            }
          }
        }
      }
    }
  }
  return out;
}

// Pull a candidate onto the exact distance offsets with Gauss-Newton.
bool refine_center(Vec2& p, const Polyline& a1, double d1, const Polyline& a2, double d2) {
  for (int iter = 0; iter < 25; ++iter) {
    const auto [q1, dist1] = geom::closest_point(a1, p);
    const auto [q2, dist2] = geom::closest_point(a2, p);
    if (dist1 < 1e-12 || dist2 < 1e-12) return false;
    const Vec2 u1 = (p - q1) / dist1;
    const Vec2 u2 = (p - q2) / dist2;
    const double f1 = dist1 - d1;
    const double f2 = dist2 - d2;
    if (std::abs(f1) < 1e-12 && std::abs(f2) < 1e-12) return true;
    const double det = cross2(u1, u2);
    if (std::abs(det) < 1e-9) return std::abs(f1) < 1e-9 && std::abs(f2) < 1e-9;
    // solve [u1; u2] * delta = [f1; f2]
    const Vec2 delta((f1 * u2.y() - f2 * u1.y()) / det, (f2 * u1.x() - f1 * u2.x()) / det);
    p -= delta;
    if (delta.norm() < 1e-13) break;
  }
  const double e1 = std::abs(geom::closest_point(a1, p).second - d1);
  const double e2 = std::abs(geom::closest_point(a2, p).second - d2);
  return e1 <= 1e-9 && e2 <= 1e-9;
}

}  // namespace

CornerSolution corner_center(const Polyline& a1, double w1, const Polyline& a2, double w2,
                             double r, const Vec2& jc, double arc_tol) {
  CornerSolution sol;
  sol.w1 = w1;
  sol.w2 = w2;
  sol.radius = r;
  sol.status = CornerStatus::NoCenter;

  const double d1 = w1 + r;
  const double d2 = w2 + r;
  const geom::Polygon b1 = geom::buffer(a1, d1, arc_tol);
  const geom::Polygon b2 = geom::buffer(a2, d2, arc_tol);
  std::vector<Vec2> candidates =
      ring_intersections(boundary_rings(b1), boundary_rings(b2), jc);

  // A corner must rest on the body of both axes, not on the junction node.
  std::erase_if(candidates, [&](const Vec2& c) {
    return geom::locate_along(a1, c) <= kNodeFootprintTol ||
           geom::locate_along(a2, c) <= kNodeFootprintTol;
  });
  if (candidates.empty()) return sol;

  auto better = [&](const Vec2& a, const Vec2& b) {
    const double da = (a - jc).norm(), db = (b - jc).norm();
    if (std::abs(da - db) > 1e-9) return da < db;
    if (std::abs(a.x() - b.x()) > 1e-12) return a.x() < b.x();
    return a.y() < b.y();
  };
  Vec2 best = candidates.front();
  for (const auto& c : candidates)
    if (better(c, best)) best = c;

  if (!refine_center(best, a1, d1, a2, d2)) return sol;
  // Refinement may not cross back over the node-footprint rule.
  if (geom::locate_along(a1, best) <= kNodeFootprintTol ||
      geom::locate_along(a2, best) <= kNodeFootprintTol)
    return sol;

  sol.center = best;
  sol.status = CornerStatus::Ok;
  return sol;
}

CornerSolution corner_arc(CornerSolution sol, const Polyline& a1, const Polyline& a2,
                          const Vec2& jc) {
  if (sol.status == CornerStatus::NoCenter) return sol;
  auto tangent_on = [&](const Polyline& axis, double w) {
    const auto [q, dist] = geom::closest_point(axis, sol.center);
    if (dist < 1e-12)
      throw Error(ErrorCode::InternalInconsistency, "corner centre on the axis");
    return Vec2(q + w * (sol.center - q) / dist);
  };
  sol.tangent1 = tangent_on(a1, sol.w1);
  sol.tangent2 = tangent_on(a2, sol.w2);
  for (const Vec2& t : {sol.tangent1, sol.tangent2})
    if ((t - sol.center).norm() > sol.radius + 1e-3)
      throw Error(ErrorCode::InternalInconsistency, "tangent point off the corner circle");

  CircleArc arc;
  arc.center = sol.center;
  arc.radius = sol.radius;
  arc.start_angle =
      std::atan2(sol.tangent1.y() - sol.center.y(), sol.tangent1.x() - sol.center.x());
  arc.end_angle =
      std::atan2(sol.tangent2.y() - sol.center.y(), sol.tangent2.x() - sol.center.x());
  arc.orientation = geom::ArcOrientation::CCW;
  const Vec2 mid_ccw = arc.point_at(arc.start_angle + arc.swept_angle() / 2);
  arc.orientation = geom::ArcOrientation::CW;
  const Vec2 mid_cw = arc.point_at(arc.start_angle - arc.swept_angle() / 2);
  arc.orientation = (mid_ccw - jc).norm() <= (mid_cw - jc).norm() ? geom::ArcOrientation::CCW
                                                                  : geom::ArcOrientation::CW;
  sol.arc = arc;
  sol.has_arc = true;
  return sol;
}

double arc_distance(const CircleArc& arc, const Vec2& p) {
  const Vec2 v = p - arc.center;
  const double angle = std::atan2(v.y(), v.x());
  // is the angle within the swept range?
  const double sweep = arc.swept_angle();
  double from_start = arc.orientation == geom::ArcOrientation::CCW ? angle - arc.start_angle
                                                                   : arc.start_angle - angle;
  from_start = std::fmod(from_start, 2 * std::numbers::pi);
  if (from_start < 0) from_start += 2 * std::numbers::pi;
  if (from_start <= sweep) return std::abs(v.norm() - arc.radius);
  return std::min((p - arc.start_point()).norm(), (p - arc.end_point()).norm());
}

CornerSolution detect_misplaced(CornerSolution sol, const Polyline& a1, const Polyline& a2,
                                const Vec2& jc, const SolverConfig& cfg) {
  if (sol.status != CornerStatus::Ok || !sol.has_arc) return sol;
  const double threshold = cfg.misplaced_factor * (std::max(sol.w1, sol.w2) + sol.radius);
  if (!(arc_distance(sol.arc, jc) > threshold)) return sol;
  CornerSolution redo = corner_center(a1, sol.w1, a2, sol.w2, cfg.min_radius, jc, cfg.arc_tol);
  if (redo.status != CornerStatus::Ok) return sol;  // keep the original rather than nothing
  redo = corner_arc(std::move(redo), a1, a2, jc);
  redo.status = CornerStatus::MisplacedMinRadius;
  redo.edge1 = sol.edge1;
  redo.edge2 = sol.edge2;
  return redo;
}

std::map<std::string, BorderPoint> border_points(const net::Topology& topo,
                                                 const net::JunctionNode& junction,
                                                 const std::vector<CornerSolution>& corners) {
  std::map<std::string, BorderPoint> out;
  for (const auto& corner : corners) {
    if (corner.status == CornerStatus::NoCenter) continue;
    for (const auto& edge_id : {corner.edge1, corner.edge2}) {
      const net::TopoEdge& e = topo.edge(edge_id);
      const Polyline from_node = topo.edge_from_node(e, junction.node);
      const double s = geom::locate_along(from_node, corner.center);
      if (s <= 0) continue;
      auto it = out.find(edge_id);
      if (it == out.end() || s > it->second.s)
        out[edge_id] = BorderPoint{edge_id, s, geom::interpolate(from_node, s)};
    }
  }
  // Fallback for uncovered edges: half-width of the widest incident axis.
  double w_max = 0;
  for (const auto& edge_id : junction.incident_edges)
    w_max = std::max(w_max, topo.axes.at(topo.edge(edge_id).axis_id).half_width);
  for (const auto& edge_id : junction.incident_edges) {
    if (out.count(edge_id)) continue;
    const net::TopoEdge& e = topo.edge(edge_id);
    const Polyline from_node = topo.edge_from_node(e, junction.node);
    const double s = std::min(w_max, from_node.length());
    out[edge_id] = BorderPoint{edge_id, s, geom::interpolate(from_node, s)};
  }
  return out;
}

JunctionSolution solve_junction(
    const net::Topology& topo, int node,
    const std::function<double(const net::TopoEdge&, const net::TopoEdge&)>& radius_for_pair,
    const SolverConfig& cfg) {
  JunctionSolution out;
  out.node = node;
  const net::JunctionNode junction = topo.junction_at(node);
  out.center = junction.center;
  const auto& incident = junction.incident_edges;

  if (incident.size() >= 2) {
    const std::size_t n_pairs = incident.size() == 2 ? 1 : incident.size();
    for (std::size_t k = 0; k < n_pairs; ++k) {
      const std::string& id1 = incident[k];
      const std::string& id2 = incident[(k + 1) % incident.size()];
      if (id1 == id2) continue;  // self-loop edge listed once
      const net::TopoEdge& e1 = topo.edge(id1);
      const net::TopoEdge& e2 = topo.edge(id2);
      const Polyline a1 = topo.edge_from_node(e1, node);
      const Polyline a2 = topo.edge_from_node(e2, node);
      const double w1 = topo.axes.at(e1.axis_id).half_width;
      const double w2 = topo.axes.at(e2.axis_id).half_width;
      const double r = radius_for_pair(e1, e2);

      CornerSolution sol = corner_center(a1, w1, a2, w2, r, junction.center, cfg.arc_tol);
      sol.edge1 = id1;
      sol.edge2 = id2;
      if (sol.status == CornerStatus::Ok) {
        sol = corner_arc(std::move(sol), a1, a2, junction.center);
        sol = detect_misplaced(std::move(sol), a1, a2, junction.center, cfg);
      }
      out.corners.push_back(std::move(sol));
    }
  }
  out.borders = border_points(topo, junction, out.corners);
  return out;
}

}  // namespace streetgen::junc
