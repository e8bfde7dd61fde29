#include "streetgen/network/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "streetgen/errors.hpp"

namespace streetgen::net {

using geom::cross2;
using geom::Polyline;
using geom::Vec2;

const char* to_string(Importance v) {
  switch (v) {
    case Importance::Major:
      return "major";
    case Importance::Medium:
      return "medium";
    case Importance::Residential:
      return "residential";
  }
  return "residential";
}

const char* to_string(Direction v) {
  switch (v) {
    case Direction::Direct:
      return "direct";
    case Direction::Reverse:
      return "reverse";
    case Direction::Both:
      return "both";
  }
  return "both";
}

Importance importance_from_string(const std::string& s) {
  if (s == "major") return Importance::Major;
  if (s == "medium") return Importance::Medium;
  if (s == "residential") return Importance::Residential;
  throw Error(ErrorCode::InvalidParameter, "unknown importance '" + s + "'");
}

Direction direction_from_string(const std::string& s) {
  if (s == "direct") return Direction::Direct;
  if (s == "reverse") return Direction::Reverse;
  if (s == "both") return Direction::Both;
  throw Error(ErrorCode::InvalidParameter, "unknown direction '" + s + "'");
}

std::string RoadAxis::violation(double min_length) const {
  if (!geometry.valid()) return "geometry is not a valid polyline";
  if (geometry.length() <= min_length) return "geometry shorter than snap tolerance";
  if (!(half_width > 0) || half_width > 50) return "half_width outside (0, 50]";
  if (lane_count < 1 || lane_count > 12) return "lane_count outside [1, 12]";
  if (!(avg_speed > 0)) return "avg_speed must be positive";
  return {};
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::uint64_t cell_key(long long x, long long y) {
  return static_cast<std::uint64_t>(x) * 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(y);
}

// Hash grid over points supporting radius queries.
class PointGrid {
 public:
  explicit PointGrid(double cell) : cell_(cell) {}
  void insert(int id, const Vec2& p) {
    pts_.emplace_back(id, p);
    cells_[key(p)].push_back(static_cast<int>(pts_.size()) - 1);
  }
  template <typename F>
  void near(const Vec2& p, double radius, F&& fn) const {
    const int r = static_cast<int>(std::ceil(radius / cell_));
    const long long cx = static_cast<long long>(std::floor(p.x() / cell_));
    const long long cy = static_cast<long long>(std::floor(p.y() / cell_));
    for (long long dx = -r; dx <= r; ++dx)
      for (long long dy = -r; dy <= r; ++dy) {
        auto it = cells_.find(cell_key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (int slot : it->second) {
          const auto& [id, q] = pts_[slot];
          if ((q - p).norm() <= radius) fn(id, q);
        }
      }
  }

 private:
  std::uint64_t key(const Vec2& p) const {
    return cell_key(static_cast<long long>(std::floor(p.x() / cell_)),
                    static_cast<long long>(std::floor(p.y() / cell_)));
  }
  double cell_;
  std::vector<std::pair<int, Vec2>> pts_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

struct TaggedSeg {
  int axis = 0;  // index into the sorted accepted-axis list
  Vec2 a, b;
};

// Crossing and touching points between the axis polylines, snap_tol fuzzy.
std::vector<Vec2> crossing_points(const std::vector<const RoadAxis*>& axes, double snap_tol) {
  std::vector<TaggedSeg> segs;
  double len_sum = 0;
  for (std::size_t ai = 0; ai < axes.size(); ++ai) {
    const auto& pts = axes[ai]->geometry.pts;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      segs.push_back({static_cast<int>(ai), pts[i], pts[i + 1]});
      len_sum += (pts[i + 1] - pts[i]).norm();
    }
  }
  if (segs.empty()) return {};
  const double cell = std::max(len_sum / segs.size(), snap_tol * 4);

  std::unordered_map<std::uint64_t, std::vector<int>> grid;
  auto visit_cells = [&](const TaggedSeg& s, auto&& fn) {
    const long long x0 = static_cast<long long>(std::floor((std::min(s.a.x(), s.b.x()) - snap_tol) / cell));
    const long long x1 = static_cast<long long>(std::floor((std::max(s.a.x(), s.b.x()) + snap_tol) / cell));
    const long long y0 = static_cast<long long>(std::floor((std::min(s.a.y(), s.b.y()) - snap_tol) / cell));
    const long long y1 = static_cast<long long>(std::floor((std::max(s.a.y(), s.b.y()) + snap_tol) / cell));
    for (long long x = x0; x <= x1; ++x)
      for (long long y = y0; y <= y1; ++y) fn(cell_key(x, y));
  };
  for (std::size_t i = 0; i < segs.size(); ++i)
    visit_cells(segs[i], [&](std::uint64_t k) { grid[k].push_back(static_cast<int>(i)); });

  std::vector<Vec2> points;
  auto consider_pair = [&](const TaggedSeg& s1, const TaggedSeg& s2, bool same_axis,
                           bool adjacent) {
    const Vec2 r = s1.b - s1.a;
    const Vec2 s = s2.b - s2.a;
    const Vec2 qp = s2.a - s1.a;
    const double denom = cross2(r, s);
    const double rlen = r.norm(), slen = s.norm();
    if (std::abs(denom) > 1e-12 * rlen * slen) {
      const double t = cross2(qp, s) / denom;
      const double u = cross2(qp, r) / denom;
      const double tol_t = snap_tol / rlen, tol_u = snap_tol / slen;
      if (t >= -tol_t && t <= 1 + tol_t && u >= -tol_u && u <= 1 + tol_u) {
        // Adjacent segments of one axis always meet at their shared vertex;
        // that is not a crossing.
        const bool interior =
            (t > tol_t && t < 1 - tol_t) || (u > tol_u && u < 1 - tol_u) || !same_axis;
        if (interior && !(same_axis && adjacent))
          points.push_back(s1.a + std::clamp(t, 0.0, 1.0) * r);
      }
    }
  };

  std::vector<char> seen(segs.size(), 0);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    std::vector<int> cand;
    visit_cells(segs[i], [&](std::uint64_t k) {
      auto it = grid.find(k);
      if (it == grid.end()) return;
      for (int j : it->second)
        if (j > static_cast<int>(i) && !seen[j]) {
          seen[j] = 1;
          cand.push_back(j);
        }
    });
    for (int j : cand) seen[j] = 0;
    for (int j : cand) {
      const bool same_axis = segs[i].axis == segs[j].axis;
      const bool adjacent = same_axis && std::abs(j - static_cast<int>(i)) == 1;
      consider_pair(segs[i], segs[j], same_axis, adjacent);
    }
  }
  return points;
}

}  // namespace

namespace {
void trace_faces(Topology& topo);
}

const TopoEdge& Topology::edge(const std::string& id) const {
  auto it = edge_index.find(id);
  if (it == edge_index.end()) throw Error(ErrorCode::NotFound, "unknown edge '" + id + "'");
  return edges[it->second];
}

bool Topology::has_edge(const std::string& id) const { return edge_index.count(id) > 0; }

const TopoFace* Topology::face(const std::string& id) const {
  for (const auto& f : faces)
    if (f.id == id) return &f;
  return nullptr;
}

geom::Polyline Topology::edge_from_node(const TopoEdge& e, int node) const {
  if (e.start_node == node) return e.geometry;
  if (e.end_node == node) return e.geometry.reversed();
  throw Error(ErrorCode::InvalidParameter, "edge " + e.id + " not incident to node");
}

int Topology::other_node(const TopoEdge& e, int node) const {
  return e.start_node == node ? e.end_node : e.start_node;
}

JunctionNode Topology::junction_at(int node) const {
  JunctionNode j;
  j.node = node;
  j.center = nodes[node].pos;
  j.incident_edges = nodes[node].incident_edges;
  return j;
}

Topology build_topology(const std::vector<RoadAxis>& input, double snap_tol) {
  if (!(snap_tol > 0)) throw Error(ErrorCode::InvalidParameter, "snap_tol must be positive");
  Topology topo;
  topo.snap_tol = snap_tol;

  // Accept axes in sorted-id order so that the construction is independent of
  // the input ordering.
  std::vector<const RoadAxis*> accepted;
  {
    std::map<std::string, const RoadAxis*> by_id;
    for (const auto& axis : input) {
      if (by_id.count(axis.id)) {
        topo.diagnostics.push_back({axis.id, "duplicate axis id, rejected"});
        continue;
      }
      by_id[axis.id] = &axis;
    }
    for (const auto& [id, axis] : by_id) {
      const std::string why = axis->violation(snap_tol);
      if (!why.empty()) {
        topo.diagnostics.push_back({id, why + ", rejected"});
        continue;
      }
      accepted.push_back(axis);
      topo.axes.emplace(id, *axis);
    }
  }

  // Candidate node points: axis endpoints and mutual crossings, clustered
  // with union-find so the result does not depend on discovery order.
  std::vector<Vec2> candidates;
  for (const auto* axis : accepted) {
    candidates.push_back(axis->geometry.front());
    candidates.push_back(axis->geometry.back());
  }
  for (const auto& p : crossing_points(accepted, snap_tol)) candidates.push_back(p);

  UnionFind uf(candidates.size());
  {
    PointGrid pgrid(std::max(snap_tol, 1e-9));
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      pgrid.near(candidates[i], snap_tol,
                 [&](int j, const Vec2&) { uf.unite(static_cast<int>(i), j); });
      pgrid.insert(static_cast<int>(i), candidates[i]);
    }
  }
  std::map<int, std::vector<int>> clusters;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    clusters[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));

  std::vector<Vec2> node_pos;
  for (const auto& [root, members] : clusters) {
    Vec2 c(0, 0);
    for (int m : members) c += candidates[m];
    node_pos.push_back(c / members.size());
  }
  // Deterministic node numbering by position.
  std::sort(node_pos.begin(), node_pos.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
  });
  node_pos.erase(std::unique(node_pos.begin(), node_pos.end(),
                             [&](const Vec2& a, const Vec2& b) {
                               return (a - b).norm() <= snap_tol * 0.5;
                             }),
                 node_pos.end());

  PointGrid node_grid(std::max(snap_tol, 1e-9));
  for (std::size_t i = 0; i < node_pos.size(); ++i)
    node_grid.insert(static_cast<int>(i), node_pos[i]);

  topo.nodes.resize(node_pos.size());
  for (std::size_t i = 0; i < node_pos.size(); ++i) topo.nodes[i].pos = node_pos[i];

  auto nearest_node = [&](const Vec2& p) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    node_grid.near(p, snap_tol * 2.5, [&](int id, const Vec2& q) {
      const double d = (q - p).norm();
      if (d < best_d || (d == best_d && id < best)) {
        best_d = d;
        best = id;
      }
    });
    return best;
  };

  // Split every axis at the nodes lying on it.
  for (const auto* axis : accepted) {
    const Polyline& g = axis->geometry;
    const double total = g.length();
    struct Event {
      double s;
      int node;
    };
    std::vector<Event> events;
    const int n_front = nearest_node(g.front());
    const int n_back = nearest_node(g.back());
    if (n_front < 0 || n_back < 0) {
      topo.diagnostics.push_back({axis->id, "endpoint lost during snapping, rejected"});
      continue;
    }
    events.push_back({0.0, n_front});
    events.push_back({total, n_back});
    // interior nodes close to the axis
    std::set<int> near_nodes;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      const Vec2 mid = (g[i] + g[i + 1]) / 2;
      const double radius = (g[i + 1] - g[i]).norm() / 2 + snap_tol * 1.5;
      node_grid.near(mid, radius, [&](int id, const Vec2&) { near_nodes.insert(id); });
    }
    for (int n : near_nodes) {
      const auto [q, dist] = geom::closest_point(g, topo.nodes[n].pos);
      if (dist > snap_tol * 1.001) continue;
      const double s = geom::locate_along(g, topo.nodes[n].pos);
      if (s > 1e-9 && s < total - 1e-9) events.push_back({s, n});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
      return a.s != b.s ? a.s < b.s : a.node < b.node;
    });
    // drop adjacent repeats of the same node
    events.erase(std::unique(events.begin(), events.end(),
                             [](const Event& a, const Event& b) { return a.node == b.node; }),
                 events.end());

    int ordinal = 0;
    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
      const Event& e0 = events[k];
      const Event& e1 = events[k + 1];
      if (e1.s - e0.s <= snap_tol) {
        topo.diagnostics.push_back({axis->id, "degenerate piece between nodes dropped"});
        continue;
      }
      Polyline piece = geom::sub_polyline(g, std::max(e0.s, 0.0), std::min(e1.s, total));
      piece.pts.front() = topo.nodes[e0.node].pos;
      piece.pts.back() = topo.nodes[e1.node].pos;
      // guard against duplicate vertices introduced by snapping
      std::vector<Vec2> clean;
      for (const auto& p : piece.pts)
        if (clean.empty() || (p - clean.back()).norm() > 1e-9) clean.push_back(p);
      if (clean.size() < 2 && e0.node != e1.node) continue;
      if (clean.size() < 2) continue;
      piece.pts = std::move(clean);

      TopoEdge edge;
      edge.id = axis->id + "#" + std::to_string(ordinal++);
      edge.axis_id = axis->id;
      edge.start_node = e0.node;
      edge.end_node = e1.node;
      edge.geometry = std::move(piece);
      topo.edges.push_back(std::move(edge));
    }
  }

  std::sort(topo.edges.begin(), topo.edges.end(),
            [](const TopoEdge& a, const TopoEdge& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < topo.edges.size(); ++i) topo.edge_index[topo.edges[i].id] = i;

  // Incidence lists sorted by departure azimuth.
  for (const auto& e : topo.edges) {
    topo.nodes[e.start_node].incident_edges.push_back(e.id);
    if (e.end_node != e.start_node) topo.nodes[e.end_node].incident_edges.push_back(e.id);
  }
  for (std::size_t n = 0; n < topo.nodes.size(); ++n) {
    auto& list = topo.nodes[n].incident_edges;
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    auto azimuth = [&](const std::string& id) {
      const TopoEdge& e = topo.edge(id);
      const Polyline from = topo.edge_from_node(e, static_cast<int>(n));
      const Vec2 d = from[1] - from[0];
      return std::atan2(d.y(), d.x());
    };
    std::sort(list.begin(), list.end(), [&](const std::string& a, const std::string& b) {
      const double aa = azimuth(a), ab = azimuth(b);
      return aa != ab ? aa < ab : a < b;
    });
  }

  trace_faces(topo);
  return topo;
}

namespace {

std::string face_id_of(const std::vector<std::string>& sorted_edges) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& id : sorted_edges) {
    for (char c : id) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    h ^= '|';
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "f%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void trace_faces(Topology& topo) {
  const auto& edges = topo.edges;
  const std::size_t ne = edges.size();
  auto he_tail = [&](std::size_t h) { return h % 2 == 0 ? edges[h / 2].start_node : edges[h / 2].end_node; };
  auto he_head = [&](std::size_t h) { return h % 2 == 0 ? edges[h / 2].end_node : edges[h / 2].start_node; };
  auto he_geom = [&](std::size_t h) {
    return h % 2 == 0 ? edges[h / 2].geometry : edges[h / 2].geometry.reversed();
  };
  auto he_azimuth = [&](std::size_t h) {
    const auto& g = edges[h / 2].geometry;
    const Vec2 d = h % 2 == 0 ? Vec2(g[1] - g[0]) : Vec2(g[g.size() - 2] - g.back());
    return std::atan2(d.y(), d.x());
  };

  std::vector<std::vector<std::size_t>> out(topo.nodes.size());
  for (std::size_t h = 0; h < 2 * ne; ++h) out[he_tail(h)].push_back(h);
  for (auto& list : out)
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      const double aa = he_azimuth(a), ab = he_azimuth(b);
      return aa != ab ? aa < ab : a < b;
    });

  auto next_he = [&](std::size_t h) {
    const std::size_t twin = h % 2 == 0 ? h + 1 : h - 1;
    const auto& list = out[he_head(h)];
    auto it = std::find(list.begin(), list.end(), twin);
    return it == list.begin() ? list.back() : *(it - 1);
  };

  struct Cycle {
    std::vector<std::size_t> hes;
    geom::Ring ring;
    double area = 0;
  };
  std::vector<Cycle> positives, negatives, flats;
  std::vector<char> used(2 * ne, 0);
  for (std::size_t h0 = 0; h0 < 2 * ne; ++h0) {
    if (used[h0]) continue;
    Cycle cyc;
    std::size_t h = h0;
    do {
      used[h] = 1;
      cyc.hes.push_back(h);
      const Polyline g = he_geom(h);
      for (std::size_t i = 0; i + 1 < g.size(); ++i) cyc.ring.push_back(g[i]);
      h = next_he(h);
    } while (h != h0);
    cyc.ring.push_back(cyc.ring.front());
    cyc.area = geom::ring_signed_area(cyc.ring);
    if (cyc.area > 1e-9)
      positives.push_back(std::move(cyc));
    else if (cyc.area < -1e-9)
      negatives.push_back(std::move(cyc));
    else
      flats.push_back(std::move(cyc));
  }

  std::sort(positives.begin(), positives.end(),
            [](const Cycle& a, const Cycle& b) { return a.area < b.area; });

  auto edge_ids_of = [&](const Cycle& c) {
    std::vector<std::string> ids;
    for (std::size_t h : c.hes) ids.push_back(edges[h / 2].id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  };

  std::vector<TopoFace> bounded(positives.size());
  for (std::size_t i = 0; i < positives.size(); ++i) {
    bounded[i].polygon.outer = positives[i].ring;
    bounded[i].edge_ids = edge_ids_of(positives[i]);
  }

  TopoFace universal;
  universal.universal = true;
  universal.id = "universal";
  std::set<std::string> universal_edges;
  for (const auto& flat : flats)
    for (std::size_t h : flat.hes) universal_edges.insert(edges[h / 2].id);

  for (const auto& neg : negatives) {
    const Vec2 probe = (neg.ring[0] + neg.ring[1]) / 2;
    bool assigned = false;
    for (std::size_t i = 0; i < positives.size(); ++i) {
      if (positives[i].area <= -neg.area * (1 + 1e-9)) continue;
      if (geom::point_in_polygon(geom::Polygon{bounded[i].polygon.outer, {}}, probe)) {
        bounded[i].polygon.holes.push_back(neg.ring);
        auto ids = edge_ids_of(neg);
        bounded[i].edge_ids.insert(bounded[i].edge_ids.end(), ids.begin(), ids.end());
        std::sort(bounded[i].edge_ids.begin(), bounded[i].edge_ids.end());
        assigned = true;
        break;
      }
    }
    if (!assigned)
      for (std::size_t h : neg.hes) universal_edges.insert(edges[h / 2].id);
  }

  for (auto& f : bounded) f.id = face_id_of(f.edge_ids);
  std::sort(bounded.begin(), bounded.end(),
            [](const TopoFace& a, const TopoFace& b) { return a.id < b.id; });
  universal.edge_ids.assign(universal_edges.begin(), universal_edges.end());

  topo.faces = std::move(bounded);
  topo.faces.push_back(std::move(universal));
}

}  // namespace

const std::vector<TopoFace>& faces(const Topology& topo) { return topo.faces; }

std::set<std::string> one_neighborhood(const Topology& topo,
                                       const std::set<std::string>& edge_ids) {
  std::set<std::string> out;
  for (const auto& id : edge_ids) {
    const TopoEdge& e = topo.edge(id);  // throws not-found
    out.insert(id);
    for (int n : {e.start_node, e.end_node})
      for (const auto& other : topo.nodes[n].incident_edges) out.insert(other);
  }
  return out;
}

}  // namespace streetgen::net
