#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "streetgen/geom/kernel.hpp"
#include "streetgen/network/topology.hpp"

namespace streetgen::junc {

enum class CornerStatus { Ok, NoCenter, MisplacedMinRadius };

struct CornerSolution {
  std::string edge1, edge2;
  double w1 = 0, w2 = 0;
  double radius = 0;
  CornerStatus status = CornerStatus::NoCenter;
  geom::Vec2 center{0, 0};
  geom::Vec2 tangent1{0, 0}, tangent2{0, 0};  // on the w_i buffer boundaries
  geom::CircleArc arc;
  bool has_arc = false;
};

struct BorderPoint {
  std::string edge;
  double s = 0;  // curvilinear abscissa from the junction node
  geom::Vec2 point{0, 0};
};

struct JunctionSolution {
  int node = -1;
  geom::Vec2 center{0, 0};
  std::vector<CornerSolution> corners;
  std::map<std::string, BorderPoint> borders;  // one per incident edge
};

struct SolverConfig {
  double misplaced_factor = 1.5;
  double min_radius = 0.15;
  double arc_tol = geom::kDefaultArcTolerance;
};

// Corner-arc centre for a pair of axes leaving the same junction: intersect
// the boundaries of the two (w_i + r) buffers and keep the candidate closest
// to the junction centre. Candidates whose footprint on either axis collapses
// onto the junction node itself are discarded; NoCenter when nothing remains.
CornerSolution corner_center(const geom::Polyline& a1_from_jc, double w1,
                             const geom::Polyline& a2_from_jc, double w2, double r,
                             const geom::Vec2& jc,
                             double arc_tol = geom::kDefaultArcTolerance);

// Tangent points and the arc between them, swept on the junction side.
CornerSolution corner_arc(CornerSolution sol, const geom::Polyline& a1_from_jc,
                          const geom::Polyline& a2_from_jc, const geom::Vec2& jc);

// Arcs farther from the junction centre than misplaced_factor*(max(w)+r) are
// recomputed at the minimum radius.
CornerSolution detect_misplaced(CornerSolution sol, const geom::Polyline& a1_from_jc,
                                const geom::Polyline& a2_from_jc, const geom::Vec2& jc,
                                const SolverConfig& cfg = {});

// Distance from a point to the arc.
double arc_distance(const geom::CircleArc& arc, const geom::Vec2& p);

// One border point per incident edge: the farthest (by abscissa from the
// node) projection of the adjacent corner centres; edges with no candidate
// fall back to the largest neighboring half-width.
std::map<std::string, BorderPoint> border_points(
    const net::Topology& topo, const net::JunctionNode& junction,
    const std::vector<CornerSolution>& corners);

// Full per-node solve: radius_for_pair supplies the (already clamped) turning
// radius for an adjacent edge pair.
JunctionSolution solve_junction(
    const net::Topology& topo, int node,
    const std::function<double(const net::TopoEdge&, const net::TopoEdge&)>& radius_for_pair,
    const SolverConfig& cfg = {});

}  // namespace streetgen::junc
