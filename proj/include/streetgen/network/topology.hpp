#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "streetgen/geom/kernel.hpp"
#include "streetgen/network/road_axis.hpp"

namespace streetgen::net {

inline constexpr double kDefaultSnapTol = 0.05;

struct TopoNode {
  geom::Vec2 pos;
  std::vector<std::string> incident_edges;  // sorted by azimuth leaving the node
};

struct TopoEdge {
  std::string id;       // "<axis id>#<ordinal along the axis>"
  std::string axis_id;
  int start_node = -1;
  int end_node = -1;
  geom::Polyline geometry;  // oriented along the parent axis
};

struct TopoFace {
  std::string id;
  bool universal = false;
  std::vector<std::string> edge_ids;  // boundary, sorted
  geom::Polygon polygon;              // empty for the universal face
};

struct Diagnostic {
  std::string subject;  // axis / edge / feature id
  std::string message;
};

// Per-node view used by the junction solver: incident edges ordered by the
// azimuth at which they leave the node.
struct JunctionNode {
  int node = -1;
  geom::Vec2 center;
  std::vector<std::string> incident_edges;
};

class Topology {
 public:
  std::vector<TopoNode> nodes;
  std::vector<TopoEdge> edges;
  std::vector<TopoFace> faces;  // bounded faces plus one universal face
  std::map<std::string, RoadAxis> axes;  // accepted inputs
  std::vector<Diagnostic> diagnostics;
  double snap_tol = kDefaultSnapTol;

  const TopoEdge& edge(const std::string& id) const;
  bool has_edge(const std::string& id) const;
  const TopoFace* face(const std::string& id) const;

  // Edge geometry re-oriented to start at the given node.
  geom::Polyline edge_from_node(const TopoEdge& e, int node) const;
  int other_node(const TopoEdge& e, int node) const;

  JunctionNode junction_at(int node) const;

  std::map<std::string, std::size_t> edge_index;
};

Topology build_topology(const std::vector<RoadAxis>& axes, double snap_tol = kDefaultSnapTol);

// Bounded faces plus the universal face (always last, flagged).
const std::vector<TopoFace>& faces(const Topology& topo);

// Input edges plus every edge sharing a node with them.
std::set<std::string> one_neighborhood(const Topology& topo, const std::set<std::string>& edge_ids);

}  // namespace streetgen::net
