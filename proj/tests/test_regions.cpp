#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "delk/regions.hpp"

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

int first_interior_face(const Triangulation& t) {
  for (int f : t.bounded_faces()) {
    bool interior = true;
    int h = t.face_halfedge(f);
    for (int i = 0; i < 3; ++i) {
      if (!t.face_bounded(t.face_of(t.twin(h)))) interior = false;
      h = t.next(h);
    }
    if (interior) return f;
  }
  return -1;
}
}  // namespace

TEST_CASE("orthogonal arc construction") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 60; ++k) {
    const Point a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    if (orient2d(a, b, c) == 0) continue;
    const auto gc = circumcircle(a, b, c);
    const Circle& circ = std::get<Circle>(gc);
    const std::array<std::array<Point, 2>, 3> sides = {{{a, b}, {b, c}, {c, a}}};
    for (const auto& s : sides) {
      const auto arc = orthogonal_arc(circ, s[0], s[1]);
      if (is_line(arc)) continue;  // diametral edge
      const Circle& oc = std::get<Circle>(arc);
      // passes through the endpoints
      CHECK(std::abs(std::abs(s[0] - oc.center) - oc.radius) < 1e-10);
      CHECK(std::abs(std::abs(s[1] - oc.center) - oc.radius) < 1e-10);
      // orthogonality: d^2 == R^2 + r^2
      const double d2 = std::norm(oc.center - circ.center);
      CHECK(std::abs(d2 - circ.radius * circ.radius - oc.radius * oc.radius) <
            1e-10 * std::max(1.0, d2));
    }
  }
  // equilateral: three congruent arcs
  const Point a(0, 0), b(1, 0), c(0.5, std::sqrt(3) / 2);
  const Circle circ = std::get<Circle>(circumcircle(a, b, c));
  const double r1 =
      std::get<Circle>(orthogonal_arc(circ, a, b)).radius;
  const double r2 =
      std::get<Circle>(orthogonal_arc(circ, b, c)).radius;
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
}

TEST_CASE("bisector arc properties") {
  // mirror-symmetric quad: the bisector is the line through the endpoints
  const auto sym =
      PointConfiguration::standard({Point(0.5, 0.8), Point(0.5, -0.8)});
  const auto ts = delaunay(sym);
  const int hs = ts.find_halfedge(0, 1);
  REQUIRE(hs >= 0);
  REQUIRE(ts.edge_interior(hs));
  CHECK(is_line(bisector_arc(ts, hs)));

  // cocyclic neighbours: the bisector is orthogonal to both circumcircles
  const auto coc = PointConfiguration::standard({Point(1, 1), Point(0, 1)});
  const auto tc = delaunay(coc);
  int hc = -1;
  for (int h : tc.edges())
    if (tc.edge_interior(h)) hc = h;
  REQUIRE(hc >= 0);
  const auto arc = bisector_arc(tc, hc);
  const auto& cfg = tc.config();
  auto circ_of = [&](int f) {
    const auto v = tc.face_vertices(f);
    return circumcircle(cfg.at(v[0]), cfg.at(v[1]), cfg.at(v[2]));
  };
  const auto c1 = circ_of(tc.face_of(hc));
  CHECK(circle_crossing_angle(arc, c1) == doctest::Approx(kPi / 2).epsilon(1e-9));

  // random interior edges: equal angles with both circumcircles
  const auto cfg2 = random_cfg(7, 17);
  const auto t2 = delaunay(cfg2);
  for (int h : t2.edges()) {
    if (!t2.edge_interior(h)) continue;
    const auto a2 = bisector_arc(t2, h);
    const auto& c2 = t2.config();
    auto circ2 = [&](int f) {
      const auto v = t2.face_vertices(f);
      return circumcircle(c2.at(v[0]), c2.at(v[1]), c2.at(v[2]));
    };
    const double g1 = circle_crossing_angle(a2, circ2(t2.face_of(h)));
    const double g2 =
        circle_crossing_angle(a2, circ2(t2.face_of(t2.twin(h))));
    CHECK(g1 == doctest::Approx(g2).epsilon(1e-9));
    // and the common angle is (pi - theta)/2 (tangent-line angle mod pi/2)
    const double th = t2.edge_theta(h);
    const double want = (kPi - th) / 2;
    const double folded = want > kPi / 2 ? kPi - want : want;
    CHECK(g1 == doctest::Approx(folded).epsilon(1e-9));
  }
}

TEST_CASE("angle coordinates") {
  const Point a(1, 0), b(-0.5, std::sqrt(3) / 2), c(-0.5, -std::sqrt(3) / 2);
  const auto th0 = angle_coordinates(a, b, c, Point(0, 0));
  for (double x : th0) CHECK(x == doctest::Approx(kPi / 3).epsilon(1e-13));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 50; ++k) {
    const Point p(0, 0), q(1.5 + u(rng), 0), r(u(rng), 0.5 + u(rng));
    const double s = u(rng), w = u(rng) * (1 - s);
    const Point z = p + s * (q - p) + w * (r - p);
    const auto th = angle_coordinates(p, q, r, z);
    CHECK(th[0] + th[1] + th[2] == doctest::Approx(kPi).epsilon(1e-12));
    for (double x : th) CHECK(x > 0);
  }
}

TEST_CASE("jacobian identity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 40; ++k) {
    const Point a(0, 0), b(1.5 + u(rng), 0.3 * u(rng)), c(u(rng), 0.8 + u(rng));
    const double s = 0.1 + 0.8 * u(rng), w = u(rng) * (1 - s);
    const Point z = a + s * (b - a) + w * (c - a);
    if (orient2d(a, b, z) <= 0 || orient2d(b, c, z) <= 0 ||
        orient2d(c, a, z) <= 0)
      continue;
    const double h =
        1e-4 * std::min({std::abs(z - a), std::abs(z - b), std::abs(z - c)});
    auto th = [&](Point zz, int i) { return angle_coordinates(a, b, c, zz)[i]; };
    const double j11 = (th(z + Point(h, 0), 0) - th(z - Point(h, 0), 0)) / (2 * h);
    const double j12 = (th(z + Point(0, h), 0) - th(z - Point(0, h), 0)) / (2 * h);
    const double j21 = (th(z + Point(h, 0), 1) - th(z - Point(h, 0), 1)) / (2 * h);
    const double j22 = (th(z + Point(0, h), 1) - th(z - Point(0, h), 1)) / (2 * h);
    const double jac = std::abs(j11 * j22 - j12 * j21);
    CHECK(four_point_dzz(a, b, c, z) ==
          doctest::Approx(0.5 * jac).epsilon(1e-6));
  }
}

TEST_CASE("region B membership") {
  // acute face: matches inside-circumdisk-and-outside-orthogonal-disks
  const Point a(0, 0), b(1, 0), c(0.45, 0.8);
  const Circle circ = std::get<Circle>(circumcircle(a, b, c));
  CHECK(in_region_B(a, b, c, circ.center));
  CHECK_FALSE(in_region_B(a, b, c, a));            // vertices on the boundary
  CHECK_FALSE(in_region_B(a, b, c, Point(5, 5)));  // far outside
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 4000; ++k) {
    const double r = circ.radius * std::sqrt(u(rng));
    const double ph = 2 * kPi * u(rng);
    const Point z = circ.center + Point(r * std::cos(ph), r * std::sin(ph));
    bool disks = std::abs(z - circ.center) < circ.radius;
    for (const auto& s :
         std::array<std::array<Point, 2>, 3>{{{a, b}, {b, c}, {c, a}}}) {
      const auto arc = orthogonal_arc(circ, s[0], s[1]);
      const int sz = circle_side(arc, z);
      const int so = circle_side(arc, circ.center);
      disks = disks && sz != 0 && sz == so;
    }
    CHECK(in_region_B(a, b, c, z) == disks);
  }
}

TEST_CASE("region B is Moebius covariant") {
  const Point a(0, 0), b(1, 0), c(0.45, 0.8);
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-1, 1);
  const Circle circ = std::get<Circle>(circumcircle(a, b, c));
  for (int k = 0; k < 300; ++k) {
    const double r = circ.radius * std::sqrt(0.5 * (u(rng) + 1));
    const double ph = kPi * (u(rng) + 1);
    const Point z = circ.center + Point(r * std::cos(ph), r * std::sin(ph));
    // a Moebius map keeping everything finite and away from poles
    const Mobius m = {Cplx(1.2, 0.3), Cplx(0.4, -0.2), Cplx(0.05, 0.02),
                      Cplx(1.0, 0.0)};
    auto keep = [&](Point p) { return std::abs(Cplx(0.05, 0.02) * p + 1.0); };
    if (keep(z) < 0.3) continue;
    const bool before = in_region_B(a, b, c, z);
    const bool after = in_region_B(mobius_point(m, a), mobius_point(m, b),
                                   mobius_point(m, c), mobius_point(m, z));
    CHECK(before == after);
  }
}

TEST_CASE("region R: containment, subset, tiling") {
  const auto cfg = random_cfg(8, 444);
  const auto t = delaunay(cfg);
  const int f = first_interior_face(t);
  REQUIRE(f >= 0);
  const auto v = t.face_vertices(f);
  const auto& c = t.config();
  const Point A = c.at(v[0]), B = c.at(v[1]), C = c.at(v[2]);
  const Circle circ = std::get<Circle>(circumcircle(A, B, C));
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0, 1);
  int in_b = 0;
  for (int k = 0; k < 20000; ++k) {
    const double r = circ.radius * std::sqrt(u(rng));
    const double ph = 2 * kPi * u(rng);
    const Point z = circ.center + Point(r * std::cos(ph), r * std::sin(ph));
    if (in_region_B(A, B, C, z)) {
      ++in_b;
      CHECK(in_region_R(t, f, z));  // B(f) inside R(f)
    }
  }
  CHECK(in_b > 100);

  // hull faces are rejected
  bool hull_checked = false;
  for (int fb : t.bounded_faces())
    if (first_interior_face(t) != fb) {
      int h = t.face_halfedge(fb);
      bool hull = false;
      for (int i = 0; i < 3; ++i) {
        if (!t.face_bounded(t.face_of(t.twin(h)))) hull = true;
        h = t.next(h);
      }
      if (hull) {
        CHECK_THROWS_AS(in_region_R(t, fb, circ.center), GeomError);
        hull_checked = true;
        break;
      }
    }
  CHECK(hull_checked);
}

TEST_CASE("regions tile a central window") {
  // cluster well inside a ring so that central samples land in faces whose
  // three edges are interior
  std::vector<Point> pts = {Point(0.5, 0.62), Point(0.2, -0.3),
                            Point(0.95, 0.1), Point(0.4, 1.1),
                            Point(-0.25, 0.45)};
  for (int i = 0; i < 8; ++i) {
    const double a = 2 * kPi * i / 8 + 0.3;
    pts.push_back(Point(0.5, 0.2) + 3.2 * Point(std::cos(a), std::sin(a)));
  }
  const auto cfg = PointConfiguration::standard(pts);
  const auto t = delaunay(cfg);
  std::vector<int> testable;
  for (int f : t.bounded_faces()) {
    int h = t.face_halfedge(f);
    bool interior = true;
    for (int i = 0; i < 3; ++i) {
      if (!t.face_bounded(t.face_of(t.twin(h)))) interior = false;
      h = t.next(h);
    }
    if (interior) testable.push_back(f);
  }
  REQUIRE(testable.size() >= 4);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.35, 0.85);
  int covered = 0, total = 0;
  for (int k = 0; k < 3000; ++k) {
    const Point z(u(rng), u(rng) * 0.8 + 0.1);
    int hits = 0;
    for (int f : testable)
      if (in_region_R(t, f, z)) ++hits;
    CHECK(hits <= 1);  // regions never overlap
    ++total;
    if (hits == 1) ++covered;
  }
  // the window sits over the testable faces; nearly every sample is claimed
  CHECK(covered > 0.97 * total);
}

TEST_CASE("integral over B equals pi^2/16") {
  const double target = kPi * kPi / 16;
  const auto est = integral_B(Point(0, 0), Point(1, 0),
                              Point(0.5, std::sqrt(3) / 2), 200000, 5);
  CHECK(std::abs(est.sigma_distance(target)) < 4.0);
  // strongly scalene (obtuse) face: same universal value
  const auto est2 =
      integral_B(Point(0, 0), Point(2.2, 0), Point(1.8, 0.35), 200000, 6);
  CHECK(std::abs(est2.sigma_distance(target)) < 4.0);
  // Moebius-shifted face: conformal covariance
  const Mobius m = {Cplx(1.1, 0.2), Cplx(0.3, 0.1), Cplx(0.04, 0.01),
                    Cplx(1, 0)};
  const auto est3 = integral_B(mobius_point(m, Point(0, 0)),
                               mobius_point(m, Point(1, 0)),
                               mobius_point(m, Point(0.5, 0.866)), 200000, 7);
  CHECK(std::abs(est3.sigma_distance(target)) < 4.0);
  // reproducibility
  const auto est4 = integral_B(Point(0, 0), Point(1, 0),
                               Point(0.5, std::sqrt(3) / 2), 200000, 5);
  CHECK(est4.mean == est.mean);
}

TEST_CASE("integral over R matches the closed form") {
  const auto cfg = random_cfg(7, 2718);
  const auto t = delaunay(cfg);
  const int f = first_interior_face(t);
  REQUIRE(f >= 0);
  const auto ri = integral_R(t, f, 300000, 11);
  CHECK(ri.closed_form >= kPi * kPi / 16 - 1e-12);  // I1 >= I always
  CHECK(std::abs(ri.estimate.sigma_distance(ri.closed_form)) < 4.0);
}

TEST_CASE("integral over R reduces to pi^2/16 at cocyclic surroundings") {
  // regular hexagon: every quadruple cocyclic, central face has three
  // interior edges with theta == 0
  std::vector<Point> pts;
  const Point c(0.5, 0.28867513459481287);  // circumcenter of (0,1,...)
  for (int i = 0; i < 6; ++i) {
    const double a = -kPi / 2 + kPi / 3 * i;
    const Point z =
        c + 0.5773502691896258 * Point(std::cos(a), std::sin(a));
    if (std::abs(z) > 1e-12 && std::abs(z - Point(1, 0)) > 1e-12)
      pts.push_back(z);
  }
  REQUIRE(pts.size() == 4);
  const auto cfg = PointConfiguration::standard(pts);
  // search the flip orbit for a triangulation whose central face has three
  // interior edges
  for (const auto& t : enumerate_triangulations(cfg)) {
    const int f = first_interior_face(t);
    if (f < 0) continue;
    const auto ri = integral_R(t, f, 200000, 3);
    CHECK(ri.closed_form == doctest::Approx(kPi * kPi / 16).epsilon(1e-9));
    CHECK(std::abs(ri.estimate.sigma_distance(ri.closed_form)) < 4.0);
    return;
  }
  FAIL("no triangulation with an interior central face found");
}
