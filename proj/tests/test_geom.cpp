#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "delk/geom.hpp"

using namespace delk;

namespace {
constexpr double kPi = 3.14159265358979323846;
const Point I(0.0, 1.0);
}  // namespace

TEST_CASE("orient2d signs") {
  CHECK(orient2d(Point(0, 0), Point(1, 0), I) == 1);
  CHECK(orient2d(Point(0, 0), Point(1, 0), Point(2, 0)) == 0);
  CHECK(orient2d(Point(0, 0), I, Point(1, 0)) == -1);
}

TEST_CASE("orient2d is exact on tiny perturbations") {
  // collinear triple with one coordinate nudged by one ulp
  const double eps = std::ldexp(1.0, -52);
  CHECK(orient2d(Point(0, 0), Point(1, 0), Point(2, eps)) == 1);
  CHECK(orient2d(Point(0, 0), Point(1, 0), Point(2, -eps)) == -1);
  CHECK(orient2d(Point(0.1, 0.1), Point(0.2, 0.2), Point(0.3, 0.3)) == 0);
}

TEST_CASE("incircle signs") {
  const Point a(0, 0), b(1, 0);
  CHECK(incircle(a, b, I, Point(0.25, 0.25)) == 1);
  CHECK(incircle(a, b, I, Point(1, 1)) == 0);  // square corners cocyclic
  CHECK(incircle(a, b, I, Point(5, 0)) == -1);
  CHECK_THROWS_AS(incircle(a, b, Point(2, 0), Point(0, 1)), GeomError);
}

TEST_CASE("incircle determinant antisymmetry under row swaps") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 200; ++k) {
    const double ax = u(rng), ay = u(rng), bx = u(rng), by = u(rng);
    const double cx = u(rng), cy = u(rng), dx = u(rng), dy = u(rng);
    const int s = incircle(ax, ay, bx, by, cx, cy, dx, dy);
    CHECK(incircle(dx, dy, bx, by, cx, cy, ax, ay) == -s);
    CHECK(incircle(bx, by, ax, ay, cx, cy, dx, dy) == -s);
  }
}

TEST_CASE("circumcircle examples") {
  const auto g1 = circumcircle(Point(0, 0), Point(2, 0), Point(1, 1));
  const Circle& c1 = std::get<Circle>(g1);
  CHECK(std::abs(c1.center - Point(1, 0)) < 1e-14);
  CHECK(c1.radius == doctest::Approx(1.0).epsilon(1e-13));

  const auto g2 = line_through(Point(0, 0), Point(1, 0));
  CHECK(is_line(g2));
  CHECK(std::abs(std::get<Line>(g2).direction - Point(1, 0)) < 1e-15);

  const auto g3 = circumcircle(Point(0, 0), Point(1, 0), I);
  const Circle& c3 = std::get<Circle>(g3);
  CHECK(std::abs(c3.center - Point(0.5, 0.5)) < 1e-14);
  CHECK(c3.radius == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-13));

  CHECK(is_line(circumcircle(Point(0, 0), Point(1, 0), Point(2, 0))));
  CHECK_THROWS_AS(circumcircle(Point(0, 0), Point(0, 0), I), GeomError);
}

TEST_CASE("triangle angles") {
  auto a = triangle_angles(Point(0, 0), Point(1, 0), I);
  CHECK(a[0] == doctest::Approx(kPi / 2).epsilon(1e-13));
  CHECK(a[1] == doctest::Approx(kPi / 4).epsilon(1e-13));
  CHECK(a[2] == doctest::Approx(kPi / 4).epsilon(1e-13));

  auto e = triangle_angles(Point(0, 0), Point(1, 0),
                           Point(0.5, std::sqrt(3) / 2));
  for (double x : e) CHECK(x == doctest::Approx(kPi / 3).epsilon(1e-12));

  auto r = triangle_angles(Point(0, 0), Point(2, 0), Point(1, 1));
  CHECK(r[0] == doctest::Approx(kPi / 4));
  CHECK(r[2] == doctest::Approx(kPi / 2));

  CHECK_THROWS_AS(triangle_angles(Point(0, 0), Point(1, 0), Point(2, 0)),
                  GeomError);
}

TEST_CASE("triangle angle sum and similarity invariance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 100; ++k) {
    const Point a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    if (orient2d(a, b, c) == 0) continue;
    const auto ang = triangle_angles(a, b, c);
    CHECK(std::abs(ang[0] + ang[1] + ang[2] - kPi) < 1e-12);
    const Cplx m(0.3 + 0.2 * u(rng), 1.1);
    const Cplx t(u(rng), u(rng));
    const auto ang2 = triangle_angles(m * a + t, m * b + t, m * c + t);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(ang[i] - ang2[i]) < 1e-10);
  }
}

TEST_CASE("edge_angle conventions") {
  const Point a(0, 0), b(1, 0);
  // square split by a diagonal: cocyclic
  CHECK(std::abs(edge_angle(Point(1, 0), I, Point(0, 0), Point(1, 1))) <
        1e-14);
  // symmetric pair
  CHECK(edge_angle(a, b, I, Point(0, -1)) ==
        doctest::Approx(kPi / 2).epsilon(1e-13));
  // hull edge: apex at infinity contributes zero
  CHECK(edge_angle(a, b, I, std::nullopt) ==
        doctest::Approx(3 * kPi / 4).epsilon(1e-13));
  // symmetry in the two faces (swap role of the directed edge)
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 50; ++k) {
    const Point s(u(rng), 1 + std::abs(u(rng)));
    const Point t(u(rng), -1 - std::abs(u(rng)));
    const double th1 = edge_angle(a, b, s, t);
    const double th2 = edge_angle(b, a, t, s);
    CHECK(std::abs(th1 - th2) < 1e-12);
  }
}

TEST_CASE("opposite diagonals of a convex quad have opposite theta sign") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.2, 1.4);
  for (int k = 0; k < 100; ++k) {
    // convex quad around the origin
    const Point p0 = u(rng) * Point(1, 0), p1 = u(rng) * Point(0, 1);
    const Point p2 = u(rng) * Point(-1, 0), p3 = u(rng) * Point(0, -1);
    const double t02 = edge_angle(p0, p2, p1, p3);  // diagonal (p0,p2)
    const double t13 = edge_angle(p1, p3, p2, p0);  // diagonal (p1,p3)
    if (std::abs(t02) < 1e-12) continue;  // cocyclic
    CHECK(t02 * t13 < 0);
  }
}

TEST_CASE("point configuration invariants") {
  CHECK_THROWS_AS(PointConfiguration::standard({Point(0, 0)}), GeomError);
  CHECK_THROWS_AS(
      PointConfiguration({Point(0, 0), std::nullopt, std::nullopt},
                         {0, 1, 2}),
      GeomError);
  const auto cfg = PointConfiguration::standard({Point(0.3, 0.4)});
  CHECK(cfg.size() == 4);
  CHECK(cfg.infinite_vertex() == 2);
  CHECK(cfg.free_ids() == std::vector<int>{3});
  CHECK_THROWS_AS(cfg.at(2), GeomError);
}

TEST_CASE("delta3 values") {
  const auto cfg = PointConfiguration::standard({I});
  // (0, 1, i): (-1)(-i)(1-i) = 1+i
  CHECK(std::abs(delta3(cfg, 0, 1, 3) - Point(1, 1)) < 1e-15);
  // reduced convention with the infinite vertex
  CHECK(std::abs(delta3(cfg, 2, 0, 1) - Point(-1, 0)) < 1e-15);
  CHECK_THROWS_AS(delta3(cfg, 0, 0, 1), GeomError);
}

TEST_CASE("delta3 modulus scales cubically under similarity") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 50; ++k) {
    const Point z4(u(rng), u(rng)), z5(u(rng), u(rng));
    if (z4 == z5 || std::abs(z4) < 1e-3 || std::abs(z5) < 1e-3) continue;
    const auto cfg = PointConfiguration::standard({z4, z5});
    const Cplx a(u(rng), u(rng));
    if (std::abs(a) < 0.1) continue;
    const Cplx b(u(rng), u(rng));
    const Mobius m = {a, b, Cplx(0), Cplx(1)};  // z -> a z + b
    const auto cfg2 = mobius_apply(m, cfg);
    const double r1 = std::abs(delta3(cfg, 0, 1, 3));
    const double r2 = std::abs(delta3(cfg2, 0, 1, 3));
    CHECK(r2 / r1 == doctest::Approx(std::pow(std::abs(a), 3)).epsilon(1e-9));
  }
}

TEST_CASE("mobius_apply") {
  const auto cfg =
      PointConfiguration({Point(1, 0), Point(2, 0), std::nullopt}, {0, 1, 2});
  const Mobius ident = {Cplx(1), Cplx(0), Cplx(0), Cplx(1)};
  const auto same = mobius_apply(ident, cfg);
  CHECK(same.at(0) == Point(1, 0));

  const Mobius inv = {Cplx(0), Cplx(1), Cplx(1), Cplx(0)};  // z -> 1/z
  const auto cfg2 = mobius_apply(inv, cfg);
  CHECK(std::abs(cfg2.at(0) - Point(1, 0)) < 1e-15);
  CHECK(std::abs(cfg2.at(1) - Point(0.5, 0)) < 1e-15);
  CHECK(cfg2.is_infinite(2) == false);
  CHECK(std::abs(cfg2.at(2) - Point(0, 0)) < 1e-15);

  const Mobius shift = {Cplx(1), Cplx(3, 1), Cplx(0), Cplx(1)};
  const auto cfg3 = mobius_apply(shift, cfg);
  CHECK(cfg3.is_infinite(2));
  CHECK(std::abs(cfg3.at(0) - Point(4, 1)) < 1e-15);

  const Mobius sing = {Cplx(1), Cplx(1), Cplx(1), Cplx(1)};
  CHECK_THROWS_AS(mobius_apply(sing, cfg), GeomError);
}

TEST_CASE("circle crossing angle") {
  const Circle c1{Point(0, 0), 1.0};
  const Circle c2{Point(1, 0), 1.0};
  // cos(angle) = (r1^2 + r2^2 - d^2)/(2 r1 r2) = 1/2
  CHECK(circle_crossing_angle(c1, c2) == doctest::Approx(kPi / 3));
  const Line l{Point(0, -1), Point(1, 0)};
  CHECK(circle_crossing_angle(c1, l) == doctest::Approx(0.0).epsilon(1e-12));
}
