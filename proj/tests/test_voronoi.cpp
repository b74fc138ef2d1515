#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "delk/voronoi.hpp"

using namespace delk;

namespace {
constexpr double kPi = 3.14159265358979323846;

PointConfiguration random_cfg(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.4, 2.4);
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < n) {
    const Point z(u(rng), u(rng));
    bool ok = std::abs(z) > 0.07 && std::abs(z - Point(1, 0)) > 0.07;
    for (const Point& p : pts) ok = ok && std::abs(z - p) > 0.07;
    if (ok) pts.push_back(z);
  }
  return PointConfiguration::standard(pts);
}
}  // namespace

TEST_CASE("dual graph angles split theta") {
  for (int k = 0; k < 8; ++k) {
    const auto cfg = random_cfg(5 + k, 550 + k);
    const auto t = delaunay(cfg);
    const auto g = dual_graph(t);
    CHECK(g.faces.size() == t.bounded_faces().size());
    int interior_edges = 0;
    for (int h : t.edges())
      if (t.edge_interior(h)) ++interior_edges;
    CHECK(static_cast<int>(g.edges.size()) == interior_edges);
    for (const auto& e : g.edges) {
      const double th = t.edge_theta(e.primal_he);
      CHECK(e.theta_n + e.theta_s == doctest::Approx(th).epsilon(1e-10));
      CHECK(std::abs(e.theta_n) < kPi / 2);
      CHECK(std::abs(e.theta_s) < kPi / 2);
    }
  }
}

TEST_CASE("cocyclic faces give coincident centers") {
  const auto cfg = PointConfiguration::standard({Point(1, 1), Point(0, 1)});
  const auto t = delaunay(cfg);
  const auto g = dual_graph(t);
  REQUIRE(g.edges.size() == 1);
  CHECK(std::abs(g.edges[0].theta_n + g.edges[0].theta_s) < 1e-12);
  CHECK(std::abs(g.centers[0] - g.centers[1]) < 1e-12);
}

TEST_CASE("mirror-symmetric kite has equal half angles") {
  const auto cfg =
      PointConfiguration::standard({Point(0.5, 0.9), Point(0.5, -0.9)});
  const auto t = delaunay(cfg);
  const auto g = dual_graph(t);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].theta_n ==
        doctest::Approx(g.edges[0].theta_s).epsilon(1e-12));
}

TEST_CASE("dual edge lengths") {
  DualEdge e;
  e.theta_n = e.theta_s = 0.0;
  CHECK(dual_length_hyperbolic(e) == 0.0);
  CHECK(dual_length_flat(e) == 0.0);
  e.theta_n = e.theta_s = kPi / 4;
  const double s = std::sqrt(2.0) / 2;
  CHECK(dual_length_hyperbolic(e) ==
        doctest::Approx(std::log((1 + s) / (1 - s))).epsilon(1e-13));
  CHECK(dual_length_flat(e) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  // monotone in theta on [0, pi/2) x2
  double prev = 0;
  for (double th = 0.05; th < 1.5; th += 0.05) {
    e.theta_n = e.theta_s = th / 2;
    const double l = dual_length_flat(e);
    CHECK(l > prev);
    prev = l;
  }
  e.theta_n = kPi / 2;
  CHECK_THROWS_AS(dual_length_hyperbolic(e), GeomError);
}

TEST_CASE("small angle expansion l ~ theta_n + theta_s") {
  for (double d : {1e-3, 1e-4, 1e-5}) {
    const auto cfg = PointConfiguration::standard(
        {Point(0.5, 0.5 + d), Point(0.5, -0.5)});
    const auto t = delaunay(cfg);
    const auto g = dual_graph(t);
    for (const auto& e : g.edges) {
      const double th = e.theta_n + e.theta_s;
      if (th <= 0 || th > 1.2e-3) continue;
      CHECK(dual_length_hyperbolic(e) / th ==
            doctest::Approx(1.0).epsilon(1e-3));
    }
  }
}

TEST_CASE("flip continuity") {
  auto family = [&](double bump) {
    std::vector<Point> pts = {Point(0.5, 0.62),  Point(0.5, -0.42),
                              Point(-0.9, 0.1),  Point(1.9, 0.1),
                              Point(0.5, 1.7),   Point(0.5, -1.5),
                              Point(-0.5, -1.1), Point(1.5, 1.3)};
    pts[0] += Point(0.0, bump);
    return PointConfiguration::standard(pts);
  };
  const auto rep = flip_continuity_check(family(-0.05), family(0.25), 3, 4);
  CHECK(rep.transversal);
  CHECK(std::abs(rep.length_at_crossing) < 1e-8);
  CHECK(std::abs(rep.length_flat_at_crossing) < 1e-8);
  CHECK(rep.distance_jump < 1e-6);
  // a path that never flips the edge is rejected
  CHECK_THROWS_AS(flip_continuity_check(family(-0.05), family(-0.06), 3, 4),
                  GeomError);
}

TEST_CASE("dual distance sanity") {
  const auto cfg = random_cfg(8, 808);
  const auto t = delaunay(cfg);
  const auto g = dual_graph(t);
  REQUIRE(g.faces.size() >= 2);
  const int a = g.faces.front(), b = g.faces.back();
  const double d = dual_distance(g, a, b);
  CHECK(d >= 0);
  CHECK(dual_distance(g, a, a) == 0.0);
}
