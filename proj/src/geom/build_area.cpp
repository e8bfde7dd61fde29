#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "streetgen/geom/kernel.hpp"

namespace streetgen::geom {

namespace {

// Registers points on a tolerance grid; points closer than tol collapse to
// the first registered representative.
class PointSnapper {
 public:
  explicit PointSnapper(double tol) : tol_(tol) {}

  int id_of(const Vec2& p) {
    const long long cx = static_cast<long long>(std::floor(p.x() / tol_));
    const long long cy = static_cast<long long>(std::floor(p.y() / tol_));
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (int id : it->second)
          if ((points_[id] - p).norm() <= tol_) return id;
      }
    const int id = static_cast<int>(points_.size());
    points_.push_back(p);
    cells_[key(cx, cy)].push_back(id);
    return id;
  }

  const std::vector<Vec2>& points() const { return points_; }

 private:
  static std::uint64_t key(long long x, long long y) {
    return static_cast<std::uint64_t>(x) * 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(y);
  }
  double tol_;
  std::vector<Vec2> points_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

struct Seg {
  Vec2 a, b;
  std::vector<double> cuts;
};

// Uniform grid over segment bounding boxes for candidate pair lookup.
class SegGrid {
 public:
  SegGrid(const std::vector<Seg>& segs, double cell) : cell_(cell) {
    for (std::size_t i = 0; i < segs.size(); ++i) visit(segs[i], [&](std::uint64_t k) {
      cells_[k].push_back(static_cast<int>(i));
    });
  }

  template <typename F>
  void candidates(const Seg& s, F&& fn) const {
    std::set<int> seen;
    visit(s, [&](std::uint64_t k) {
      auto it = cells_.find(k);
      if (it == cells_.end()) return;
      for (int j : it->second)
        if (seen.insert(j).second) fn(j);
    });
  }

 private:
  template <typename F>
  void visit(const Seg& s, F&& fn) const {
    const double pad = cell_ * 0.01;
    const long long x0 = cellof(std::min(s.a.x(), s.b.x()) - pad);
    const long long x1 = cellof(std::max(s.a.x(), s.b.x()) + pad);
    const long long y0 = cellof(std::min(s.a.y(), s.b.y()) - pad);
    const long long y1 = cellof(std::max(s.a.y(), s.b.y()) + pad);
    for (long long x = x0; x <= x1; ++x)
      for (long long y = y0; y <= y1; ++y)
        fn(static_cast<std::uint64_t>(x) * 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(y));
  }
  long long cellof(double v) const { return static_cast<long long>(std::floor(v / cell_)); }
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

void intersect_pair(Seg& s1, Seg& s2, double tol) {
  const Vec2 r = s1.b - s1.a;
  const Vec2 s = s2.b - s2.a;
  const Vec2 qp = s2.a - s1.a;
  const double denom = cross2(r, s);
  const double rlen = r.norm(), slen = s.norm();
  if (std::abs(denom) > 1e-12 * rlen * slen) {
    const double t = cross2(qp, s) / denom;
    const double u = cross2(qp, r) / denom;
    if (t >= -1e-12 && t <= 1 + 1e-12 && u >= -1e-12 && u <= 1 + 1e-12) {
      s1.cuts.push_back(std::clamp(t, 0.0, 1.0));
      s2.cuts.push_back(std::clamp(u, 0.0, 1.0));
    }
    return;
  }
  // Parallel: overlapping collinear pieces split at each other's endpoints.
  if (std::abs(cross2(qp, r)) > tol * rlen) return;
  auto param_on = [](const Seg& seg, const Vec2& p, double len) {
    return (p - seg.a).dot(seg.b - seg.a) / (len * len);
  };
  for (const Vec2& p : {s2.a, s2.b}) {
    const double t = param_on(s1, p, rlen);
    if (t > 1e-12 && t < 1 - 1e-12) s1.cuts.push_back(t);
  }
  for (const Vec2& p : {s1.a, s1.b}) {
    const double u = param_on(s2, p, slen);
    if (u > 1e-12 && u < 1 - 1e-12) s2.cuts.push_back(u);
  }
}

struct FaceCycle {
  std::vector<int> verts;
  double area = 0;
};

}  // namespace

PolygonSet build_area(const std::vector<Polyline>& parts, double snap_grid) {
  // 1. Gather snapped segments.
  std::vector<Seg> segs;
  double len_sum = 0;
  for (const auto& part : parts) {
    for (std::size_t i = 0; i + 1 < part.size(); ++i) {
      Seg s{part[i], part[i + 1], {}};
      s.a = Vec2(std::round(s.a.x() / snap_grid) * snap_grid,
                 std::round(s.a.y() / snap_grid) * snap_grid);
      s.b = Vec2(std::round(s.b.x() / snap_grid) * snap_grid,
                 std::round(s.b.y() / snap_grid) * snap_grid);
      if ((s.b - s.a).norm() <= snap_grid) continue;
      len_sum += (s.b - s.a).norm();
      segs.push_back(std::move(s));
    }
  }
  if (segs.empty()) return {};

  // 2. Node all segments at mutual intersections.
  const double cell = std::max(len_sum / segs.size(), snap_grid * 16);
  SegGrid grid(segs, cell);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    grid.candidates(segs[i], [&](int j) {
      if (j <= static_cast<int>(i)) return;
      intersect_pair(segs[i], segs[j], snap_grid);
    });
  }

  PointSnapper snapper(snap_grid);
  std::set<std::pair<int, int>> edge_set;
  for (auto& s : segs) {
    s.cuts.push_back(0.0);
    s.cuts.push_back(1.0);
    std::sort(s.cuts.begin(), s.cuts.end());
    int prev = snapper.id_of(s.a);
    for (double t : s.cuts) {
      if (t <= 0.0) continue;
      const int cur = snapper.id_of(s.a + t * (s.b - s.a));
      if (cur != prev) edge_set.insert({std::min(prev, cur), std::max(prev, cur)});
      prev = cur;
    }
  }
  const auto& verts = snapper.points();
  std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());

  // 3. Rotation system: outgoing half-edges per vertex sorted by angle.
  //    Half-edge 2e is edges[e].first -> .second, 2e+1 the reverse.
  std::vector<std::vector<int>> out(verts.size());
  auto he_from = [&](int h) { return h % 2 == 0 ? edges[h / 2].first : edges[h / 2].second; };
  auto he_to = [&](int h) { return h % 2 == 0 ? edges[h / 2].second : edges[h / 2].first; };
  auto he_angle = [&](int h) {
    const Vec2 d = verts[he_to(h)] - verts[he_from(h)];
    return std::atan2(d.y(), d.x());
  };
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[edges[e].first].push_back(static_cast<int>(2 * e));
    out[edges[e].second].push_back(static_cast<int>(2 * e + 1));
  }
  for (auto& list : out)
    std::sort(list.begin(), list.end(),
              [&](int a, int b) { return he_angle(a) < he_angle(b); });

  // next(u->v) = the half-edge out of v that is the first one clockwise from
  // the reversal v->u; bounded faces come out counter-clockwise.
  auto next_he = [&](int h) {
    const int twin = h % 2 == 0 ? h + 1 : h - 1;
    const auto& list = out[he_to(h)];
    auto it = std::find(list.begin(), list.end(), twin);
    return it == list.begin() ? list.back() : *(it - 1);
  };

  // 4. Trace cycles.
  std::vector<char> used(2 * edges.size(), 0);
  std::vector<FaceCycle> positives, negatives;
  for (std::size_t h0 = 0; h0 < 2 * edges.size(); ++h0) {
    if (used[h0]) continue;
    FaceCycle cyc;
    int h = static_cast<int>(h0);
    do {
      used[h] = 1;
      cyc.verts.push_back(he_from(h));
      h = next_he(h);
    } while (h != static_cast<int>(h0));
    for (std::size_t i = 0; i < cyc.verts.size(); ++i) {
      const Vec2& a = verts[cyc.verts[i]];
      const Vec2& b = verts[cyc.verts[(i + 1) % cyc.verts.size()]];
      cyc.area += cross2(a, b) / 2;
    }
    if (cyc.area > 1e-10)
      positives.push_back(std::move(cyc));
    else if (cyc.area < -1e-10)
      negatives.push_back(std::move(cyc));
  }

  // 5. Assemble polygons; a negative cycle is a hole of the smallest positive
  //    cycle containing it, or part of the unbounded face if none does.
  std::sort(positives.begin(), positives.end(),
            [](const FaceCycle& a, const FaceCycle& b) { return a.area < b.area; });
  PolygonSet faces(positives.size());
  auto ring_of = [&](const FaceCycle& c) {
    Ring r;
    r.reserve(c.verts.size() + 1);
    for (int v : c.verts) r.push_back(verts[v]);
    r.push_back(verts[c.verts.front()]);
    return r;
  };
  for (std::size_t i = 0; i < positives.size(); ++i) faces[i].outer = ring_of(positives[i]);

  for (const auto& neg : negatives) {
    const Vec2 probe =
        (verts[neg.verts[0]] + verts[neg.verts[1 % neg.verts.size()]]) / 2;
    for (std::size_t i = 0; i < positives.size(); ++i) {
      // a containing face must be strictly larger than the hole
      if (positives[i].area <= -neg.area * (1 + 1e-9)) continue;
      if (point_in_polygon(Polygon{faces[i].outer, {}}, probe)) {
        faces[i].holes.push_back(ring_of(neg));
        break;
      }
    }
  }
  return faces;
}

}  // namespace streetgen::geom
