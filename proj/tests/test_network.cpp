#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "streetgen/errors.hpp"
#include "streetgen/network/topology.hpp"

using namespace streetgen;
using namespace streetgen::net;
using geom::Vec2;

namespace {

RoadAxis axis(const std::string& id, std::initializer_list<Vec2> pts) {
  RoadAxis a;
  a.id = id;
  a.geometry = geom::Polyline(pts);
  return a;
}

int degree(const Topology& t, int node) {
  return static_cast<int>(t.nodes[node].incident_edges.size());
}

int node_at(const Topology& t, const Vec2& p, double tol = 1e-6) {
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if ((t.nodes[i].pos - p).norm() <= tol) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("plus cross with exact endpoints") {
  std::vector<RoadAxis> axes = {
      axis("n", {{0, 0}, {0, 10}}),
      axis("s", {{0, 0}, {0, -10}}),
      axis("e", {{0, 0}, {10, 0}}),
      axis("w", {{0, 0}, {-10, 0}}),
  };
  Topology t = build_topology(axes, 0.01);
  CHECK(t.nodes.size() == 5);
  CHECK(t.edges.size() == 4);
  const int center = node_at(t, {0, 0});
  REQUIRE(center >= 0);
  CHECK(degree(t, center) == 4);
}

TEST_CASE("endpoints within tolerance share a node") {
  std::vector<RoadAxis> axes = {
      axis("a", {{0, 0}, {10, 0}}),
      axis("b", {{10.005, 0}, {20, 0}}),
  };
  Topology t = build_topology(axes, 0.01);
  CHECK(t.nodes.size() == 3);
  const int shared = node_at(t, {10.0025, 0}, 0.01);
  REQUIRE(shared >= 0);
  CHECK(degree(t, shared) == 2);
}

TEST_CASE("mid-span crossing splits both axes") {
  std::vector<RoadAxis> axes = {
      axis("a", {{-10, 0}, {10, 0}}),
      axis("b", {{0, -10}, {0, 10}}),
  };
  Topology t = build_topology(axes, 0.01);
  CHECK(t.nodes.size() == 5);
  CHECK(t.edges.size() == 4);
  const int center = node_at(t, {0, 0});
  REQUIRE(center >= 0);
  CHECK(degree(t, center) == 4);
  CHECK(t.has_edge("a#0"));
  CHECK(t.has_edge("a#1"));
}

TEST_CASE("too-short axis is rejected with a diagnostic") {
  std::vector<RoadAxis> axes = {
      axis("ok", {{0, 0}, {10, 0}}),
      axis("tiny", {{0, 0}, {0.01, 0}}),
  };
  Topology t = build_topology(axes, 0.05);
  CHECK(t.edges.size() == 1);
  REQUIRE(t.diagnostics.size() == 1);
  CHECK(t.diagnostics[0].subject == "tiny");
}

TEST_CASE("faces of a closed square") {
  std::vector<RoadAxis> axes = {
      axis("a", {{0, 0}, {10, 0}}),
      axis("b", {{10, 0}, {10, 10}}),
      axis("c", {{10, 10}, {0, 10}}),
      axis("d", {{0, 10}, {0, 0}}),
  };
  Topology t = build_topology(axes, 0.01);
  const auto& fs = faces(t);
  REQUIRE(fs.size() == 2);
  CHECK(!fs[0].universal);
  CHECK(fs[0].polygon.area() == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(fs.back().universal);
  CHECK(fs.back().edge_ids.size() == 4);
}

TEST_CASE("faces of a 2x2 block grid") {
  std::vector<RoadAxis> axes;
  for (int i = 0; i <= 2; ++i) {
    axes.push_back(axis("h" + std::to_string(i), {{0, double(i)}, {2, double(i)}}));
    axes.push_back(axis("v" + std::to_string(i), {{double(i), 0}, {double(i), 2}}));
  }
  Topology t = build_topology(axes, 0.01);
  CHECK(t.nodes.size() == 9);
  CHECK(t.edges.size() == 12);
  const auto& fs = faces(t);
  REQUIRE(fs.size() == 5);  // 4 unit blocks + universal
  for (std::size_t i = 0; i + 1 < fs.size(); ++i)
    CHECK(fs[i].polygon.area() == doctest::Approx(1.0).epsilon(1e-9));
  // Euler: V - E + F(incl. universal) = 2 on a connected planar graph
  CHECK(int(t.nodes.size()) - int(t.edges.size()) + int(fs.size()) == 2);
}

TEST_CASE("tree network has only the universal face") {
  std::vector<RoadAxis> axes = {
      axis("a", {{0, 0}, {10, 0}}),
      axis("b", {{10, 0}, {20, 5}}),
      axis("c", {{10, 0}, {20, -5}}),
  };
  Topology t = build_topology(axes, 0.01);
  const auto& fs = faces(t);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].universal);
  CHECK(fs[0].edge_ids.size() == 3);
}

TEST_CASE("one neighborhood") {
  std::vector<RoadAxis> axes = {
      axis("a", {{0, 0}, {10, 0}}),
      axis("b", {{10, 0}, {20, 0}}),
      axis("c", {{20, 0}, {30, 0}}),
      axis("iso", {{100, 100}, {110, 100}}),
  };
  Topology t = build_topology(axes, 0.01);
  auto ring = one_neighborhood(t, {"b#0"});
  CHECK(ring == std::set<std::string>{"a#0", "b#0", "c#0"});
  CHECK(one_neighborhood(t, {"iso#0"}) == std::set<std::string>{"iso#0"});
  CHECK_THROWS_AS(one_neighborhood(t, {"nope"}), Error);
}

TEST_CASE("build_topology is permutation invariant") {
  std::vector<RoadAxis> axes;
  std::mt19937 rng(3);
  for (int i = 0; i < 4; ++i) {
    axes.push_back(
        axis("h" + std::to_string(i), {{0, 3.0 * i}, {9, 3.0 * i + 0.5}}));
    axes.push_back(
        axis("v" + std::to_string(i), {{3.0 * i, -1}, {3.0 * i + 0.5, 10}}));
  }
  Topology base = build_topology(axes, 0.05);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(axes.begin(), axes.end(), rng);
    Topology t = build_topology(axes, 0.05);
    REQUIRE(t.nodes.size() == base.nodes.size());
    REQUIRE(t.edges.size() == base.edges.size());
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      CHECK((t.nodes[i].pos - base.nodes[i].pos).norm() <= 1e-9);
      CHECK(t.nodes[i].incident_edges == base.nodes[i].incident_edges);
    }
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      CHECK(t.edges[i].id == base.edges[i].id);
      CHECK(t.edges[i].start_node == base.edges[i].start_node);
      CHECK(t.edges[i].end_node == base.edges[i].end_node);
    }
  }
}

TEST_CASE("rebuilding from realized edges is a fixed point") {
  std::vector<RoadAxis> axes = {
      axis("a", {{-10, 0}, {10, 0}}),
      axis("b", {{0, -10}, {0, 10}}),
      axis("c", {{-10, 5}, {10, 5.2}}),
  };
  Topology t1 = build_topology(axes, 0.05);
  std::vector<RoadAxis> realized;
  for (const auto& e : t1.edges) {
    RoadAxis a = t1.axes.at(e.axis_id);
    a.id = e.id;
    a.geometry = e.geometry;
    realized.push_back(a);
  }
  Topology t2 = build_topology(realized, 0.05);
  CHECK(t2.nodes.size() == t1.nodes.size());
  CHECK(t2.edges.size() == t1.edges.size());
  CHECK(t2.diagnostics.empty());
}

TEST_CASE("sum of face areas matches the enclosing region") {
  // 3x3 block grid, 4x4 nodes, spacing 10: bounded faces must tile 30x30.
  std::vector<RoadAxis> axes;
  for (int i = 0; i <= 3; ++i) {
    axes.push_back(axis("h" + std::to_string(i), {{0, 10.0 * i}, {30, 10.0 * i}}));
    axes.push_back(axis("v" + std::to_string(i), {{10.0 * i, 0}, {10.0 * i, 30}}));
  }
  Topology t = build_topology(axes, 0.05);
  double area = 0;
  for (const auto& f : faces(t))
    if (!f.universal) area += f.polygon.area();
  CHECK(area == doctest::Approx(900.0).epsilon(1e-6));
}
