#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "streetgen/errors.hpp"
#include "streetgen/junction/solver.hpp"

using namespace streetgen;
using namespace streetgen::junc;
using geom::Polyline;
using geom::Vec2;

namespace {

net::RoadAxis axis(const std::string& id, std::initializer_list<Vec2> pts, double w) {
  net::RoadAxis a;
  a.id = id;
  a.geometry = Polyline(pts);
  a.half_width = w;
  return a;
}

}  // namespace

TEST_CASE("perpendicular corner centre, analytic case") {
  Polyline a1{{0, 0}, {20, 0}};
  Polyline a2{{0, 0}, {0, 20}};
  CornerSolution sol = corner_center(a1, 4, a2, 3, 2, {0, 0});
  REQUIRE(sol.status == CornerStatus::Ok);
  CHECK(sol.center.x() == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(sol.center.y() == doctest::Approx(6.0).epsilon(1e-6));

  sol = corner_arc(std::move(sol), a1, a2, {0, 0});
  CHECK(sol.tangent1.isApprox(Vec2(5, 4), 1e-6));
  CHECK(sol.tangent2.isApprox(Vec2(3, 6), 1e-6));
  CHECK(sol.arc.radius == doctest::Approx(2.0));
  // quarter arc oriented toward the junction
  CHECK(sol.arc.swept_angle() == doctest::Approx(M_PI / 2).epsilon(1e-6));
  const Vec2 mid = sol.arc.point_at(sol.arc.orientation == geom::ArcOrientation::CCW
                                        ? sol.arc.start_angle + sol.arc.swept_angle() / 2
                                        : sol.arc.start_angle - sol.arc.swept_angle() / 2);
  CHECK((mid - Vec2(0, 0)).norm() < (Vec2(5, 6) - Vec2(0, 0)).norm());
  // arc endpoints at radius from the centre
  CHECK((sol.arc.start_point() - sol.center).norm() == doctest::Approx(2.0).epsilon(1e-3));
  CHECK((sol.arc.end_point() - sol.center).norm() == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("corner centre distance invariant and symmetry") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> ang(0.3, 2.8);
  std::uniform_real_distribution<double> w(2.0, 6.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = ang(rng);
    Polyline a1{{0, 0}, {30, 0}};
    Polyline a2{{0, 0}, Vec2(30 * std::cos(theta), 30 * std::sin(theta))};
    const double w1 = w(rng), w2 = w(rng);
    CornerSolution s12 = corner_center(a1, w1, a2, w2, 2.5, {0, 0});
    CornerSolution s21 = corner_center(a2, w2, a1, w1, 2.5, {0, 0});
    REQUIRE(s12.status == CornerStatus::Ok);
    REQUIRE(s21.status == CornerStatus::Ok);
    CHECK((s12.center - s21.center).norm() <= 1e-9);
    auto [q1, d1] = geom::closest_point(a1, s12.center);
    auto [q2, d2] = geom::closest_point(a2, s12.center);
    CHECK(std::abs(d1 - (w1 + 2.5)) <= 1e-3);
    CHECK(std::abs(d2 - (w2 + 2.5)) <= 1e-3);
  }
}

TEST_CASE("corner centre equivariance under rigid motion") {
  Polyline a1{{0, 0}, {20, 0}};
  Polyline a2{{0, 0}, {0, 20}};
  CornerSolution base = corner_center(a1, 4, a2, 3, 2, {0, 0});
  REQUIRE(base.status == CornerStatus::Ok);
  const double phi = 0.7;
  const Vec2 shift(13.3, -4.2);
  auto move = [&](const Vec2& p) { return Vec2(geom::rotated(p, phi) + shift); };
  Polyline m1, m2;
  for (const auto& p : a1.pts) m1.pts.push_back(move(p));
  for (const auto& p : a2.pts) m2.pts.push_back(move(p));
  CornerSolution moved = corner_center(m1, 4, m2, 3, 2, move({0, 0}));
  REQUIRE(moved.status == CornerStatus::Ok);
  CHECK((moved.center - move(base.center)).norm() <= 1e-6);
}

TEST_CASE("contained buffer yields NoCenter") {
  // wide road swallows the short narrow one entirely
  Polyline a1{{0, 0}, {40, 0}};
  Polyline a2{{0, 0}, {2, 0.2}};
  CornerSolution sol = corner_center(a1, 10, a2, 1, 1, {0, 0});
  CHECK(sol.status == CornerStatus::NoCenter);
}

TEST_CASE("straight-through pair yields NoCenter") {
  Polyline a1{{0, 0}, {20, 0}};
  Polyline a2{{0, 0}, {-20, 0}};
  CornerSolution sol = corner_center(a1, 3, a2, 3, 2, {0, 0});
  CHECK(sol.status == CornerStatus::NoCenter);
}

TEST_CASE("symmetric 90 degree case") {
  Polyline a1{{0, 0}, {20, 0}};
  Polyline a2{{0, 0}, {0, 20}};
  CornerSolution sol = corner_center(a1, 3, a2, 3, 2, {0, 0});
  REQUIRE(sol.status == CornerStatus::Ok);
  CHECK(sol.center.isApprox(Vec2(5, 5), 1e-6));
}

TEST_CASE("misplaced arcs are recomputed at the minimum radius") {
  // nominal case stays put
  Polyline a1{{0, 0}, {20, 0}};
  Polyline a2{{0, 0}, {0, 20}};
  CornerSolution ok = corner_arc(corner_center(a1, 4, a2, 3, 2, {0, 0}), a1, a2, {0, 0});
  CornerSolution kept = detect_misplaced(ok, a1, a2, {0, 0});
  CHECK(kept.status == CornerStatus::Ok);
  CHECK(kept.radius == doctest::Approx(2.0));

  // sliver: nearly parallel axes push the centre an order of magnitude out
  const double eps = 0.05;
  Polyline b1{{0, 0}, {400, 0}};
  Polyline b2{{0, 0}, Vec2(400 * std::cos(eps), 400 * std::sin(eps))};
  CornerSolution far = corner_center(b1, 3, b2, 3, 2, {0, 0});
  REQUIRE(far.status == CornerStatus::Ok);
  far = corner_arc(std::move(far), b1, b2, {0, 0});
  REQUIRE(arc_distance(far.arc, {0, 0}) > 1.5 * (3 + 2));
  CornerSolution redone = detect_misplaced(far, b1, b2, {0, 0});
  CHECK(redone.status == CornerStatus::MisplacedMinRadius);
  CHECK(redone.radius == doctest::Approx(0.15));
}

TEST_CASE("border points on the analytic junction") {
  std::vector<net::RoadAxis> axes = {axis("a", {{0, 0}, {20, 0}}, 4),
                                     axis("b", {{0, 0}, {0, 20}}, 3)};
  net::Topology topo = net::build_topology(axes, 0.01);
  int node = -1;
  for (std::size_t i = 0; i < topo.nodes.size(); ++i)
    if (topo.nodes[i].pos.norm() < 1e-9) node = static_cast<int>(i);
  REQUIRE(node >= 0);
  JunctionSolution js = solve_junction(
      topo, node, [](const net::TopoEdge&, const net::TopoEdge&) { return 2.0; });
  REQUIRE(js.corners.size() == 1);
  REQUIRE(js.corners[0].status == CornerStatus::Ok);
  REQUIRE(js.borders.count("a#0"));
  REQUIRE(js.borders.count("b#0"));
  CHECK(js.borders["a#0"].s == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(js.borders["a#0"].point.isApprox(Vec2(5, 0), 1e-6));
  CHECK(js.borders["b#0"].s == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(js.borders["b#0"].point.isApprox(Vec2(0, 6), 1e-6));
}

TEST_CASE("degree-4 symmetric cross has equal border abscissae") {
  std::vector<net::RoadAxis> axes = {axis("h", {{-20, 0}, {20, 0}}, 3),
                                     axis("v", {{0, -20}, {0, 20}}, 3)};
  net::Topology topo = net::build_topology(axes, 0.01);
  int node = -1;
  for (std::size_t i = 0; i < topo.nodes.size(); ++i)
    if (topo.nodes[i].pos.norm() < 1e-9) node = static_cast<int>(i);
  REQUIRE(node >= 0);
  JunctionSolution js = solve_junction(
      topo, node, [](const net::TopoEdge&, const net::TopoEdge&) { return 2.0; });
  CHECK(js.corners.size() == 4);
  REQUIRE(js.borders.size() == 4);
  const double s0 = js.borders.begin()->second.s;
  for (const auto& [id, bp] : js.borders) {
    CHECK(bp.s == doctest::Approx(s0).epsilon(1e-6));
    CHECK(bp.s == doctest::Approx(5.0).epsilon(1e-6));
  }
  // at most one border per edge is structural; every corner is Ok here
  for (const auto& c : js.corners) CHECK(c.status == CornerStatus::Ok);
}

TEST_CASE("farthest candidate wins per edge") {
  // asymmetric T: the wide branch pushes one corner farther out
  std::vector<net::RoadAxis> axes = {axis("main", {{-30, 0}, {30, 0}}, 3),
                                     axis("stub", {{0, 0}, {0, 25}}, 8)};
  net::Topology topo = net::build_topology(axes, 0.01);
  int node = -1;
  for (std::size_t i = 0; i < topo.nodes.size(); ++i)
    if (topo.nodes[i].pos.norm() < 1e-9) node = static_cast<int>(i);
  REQUIRE(node >= 0);
  JunctionSolution js = solve_junction(
      topo, node, [](const net::TopoEdge&, const net::TopoEdge&) { return 2.0; });
  // the stub edge has two adjacent corners; its border keeps the max abscissa
  REQUIRE(js.borders.count("stub#0"));
  double max_s = 0;
  for (const auto& c : js.corners) {
    if (c.status == CornerStatus::NoCenter) continue;
    const auto& e = topo.edge("stub#0");
    const Polyline from = topo.edge_from_node(e, node);
    if (c.edge1 == "stub#0" || c.edge2 == "stub#0")
      max_s = std::max(max_s, geom::locate_along(from, c.center));
  }
  CHECK(js.borders["stub#0"].s == doctest::Approx(max_s).epsilon(1e-9));
}
