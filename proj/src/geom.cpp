#include "delk/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace delk {

namespace {
constexpr double kPi = 3.14159265358979323846;
}  // namespace

double wrap_pi(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

int orient2d(Point a, Point b, Point c) {
  return orient2d(a.real(), a.imag(), b.real(), b.imag(), c.real(), c.imag());
}

int incircle(Point a, Point b, Point c, Point d) {
  if (orient2d(a, b, c) <= 0)
    throw GeomError("incircle: (a,b,c) must be strictly counter-clockwise");
  return incircle(a.real(), a.imag(), b.real(), b.imag(), c.real(), c.imag(),
                  d.real(), d.imag());
}

bool is_line(const GeneralizedCircle& g) {
  return std::holds_alternative<Line>(g);
}

int circle_side(const GeneralizedCircle& g, Point z, double eps) {
  if (const Circle* c = std::get_if<Circle>(&g)) {
    const double d = std::abs(z - c->center) - c->radius;
    if (d < -eps) return 1;
    if (d > eps) return -1;
    return 0;
  }
  const Line& l = std::get<Line>(g);
  const double s = cross(l.direction, z - l.anchor);
  if (s > eps) return 1;
  if (s < -eps) return -1;
  return 0;
}

double circle_crossing_angle(const GeneralizedCircle& a,
                             const GeneralizedCircle& b) {
  auto clamp1 = [](double x) { return std::min(1.0, std::max(-1.0, x)); };
  if (!is_line(a) && !is_line(b)) {
    const Circle& ca = std::get<Circle>(a);
    const Circle& cb = std::get<Circle>(b);
    const double d2 = std::norm(ca.center - cb.center);
    const double c =
        (ca.radius * ca.radius + cb.radius * cb.radius - d2) /
        (2 * ca.radius * cb.radius);
    return std::acos(std::abs(clamp1(c)));
  }
  if (is_line(a) && is_line(b)) {
    const double da = std::arg(std::get<Line>(a).direction);
    const double db = std::arg(std::get<Line>(b).direction);
    double t = std::abs(wrap_pi(da - db));
    return std::min(t, kPi - t);
  }
  const Line& l = is_line(a) ? std::get<Line>(a) : std::get<Line>(b);
  const Circle& c = is_line(a) ? std::get<Circle>(b) : std::get<Circle>(a);
  // angle between line and circle at their intersection: cos = dist/r
  const double h = cross(l.direction, c.center - l.anchor);
  return std::acos(std::abs(clamp1(h / c.radius)));
}

GeneralizedCircle line_through(Point a, Point b) {
  const Cplx d = b - a;
  const double n = std::abs(d);
  if (n == 0.0) throw GeomError("line_through: coincident points");
  return Line{a, d / n};
}

GeneralizedCircle circumcircle(Point a, Point b, Point c) {
  if (a == b || b == c || a == c)
    throw GeomError("circumcircle: coincident points");
  if (orient2d(a, b, c) == 0) return line_through(a, b);
  // translate to a for conditioning
  const Cplx u = b - a, v = c - a;
  const double d = 2.0 * cross(u, v);
  const double nu = std::norm(u), nv = std::norm(v);
  const Cplx center =
      a + Cplx(nu * v.imag() - nv * u.imag(), nv * u.real() - nu * v.real()) /
              d;
  const double r = (std::abs(a - center) + std::abs(b - center) +
                    std::abs(c - center)) /
                   3.0;
  return Circle{center, r};
}

std::array<double, 3> triangle_angles(Point a, Point b, Point c) {
  if (a == b || b == c || a == c || orient2d(a, b, c) == 0)
    throw GeomError("triangle_angles: degenerate triangle");
  auto ang = [](Point p, Point q, Point r) {
    const Cplx u = q - p, v = r - p;
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
  };
  return {ang(a, b, c), ang(b, c, a), ang(c, a, b)};
}

double edge_angle(Point v1, Point v2, std::optional<Point> s,
                  std::optional<Point> t) {
  if (!s && !t) return kPi;  // both circumcircles are the line through v1,v2
  // theta = pi - Arg[ ((v2-s)(v1-t)) / ((v1-s)(v2-t)) ], with factors of an
  // infinite apex cancelling pairwise.
  Cplx num(1.0, 0.0), den(1.0, 0.0);
  if (s) {
    num *= v2 - *s;
    den *= v1 - *s;
  }
  if (t) {
    num *= v1 - *t;
    den *= v2 - *t;
  }
  if (num == Cplx(0.0) || den == Cplx(0.0))
    throw GeomError("edge_angle: apex coincides with an edge endpoint");
  return wrap_pi(kPi - std::arg(num / den));
}

PointConfiguration PointConfiguration::standard(
    const std::vector<Point>& free_points) {
  std::vector<std::optional<Point>> pts;
  pts.reserve(free_points.size() + 3);
  pts.emplace_back(Point(0.0, 0.0));
  pts.emplace_back(Point(1.0, 0.0));
  pts.emplace_back(std::nullopt);
  for (const Point& p : free_points) pts.emplace_back(p);
  return PointConfiguration(std::move(pts), {0, 1, 2});
}

PointConfiguration::PointConfiguration(
    std::vector<std::optional<Point>> points, std::array<int, 3> gauge)
    : gauge_(gauge) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw GeomError("configuration needs at least 3 points");
  if (gauge[0] == gauge[1] || gauge[1] == gauge[2] || gauge[0] == gauge[2])
    throw GeomError("gauge ids must be distinct");
  for (int g : gauge)
    if (g < 0 || g >= n) throw GeomError("gauge id out of range");
  pts_.assign(n, Point(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    if (!points[i]) {
      if (inf_ >= 0) throw GeomError("at most one infinite vertex");
      inf_ = i;
    } else {
      if (!std::isfinite(points[i]->real()) ||
          !std::isfinite(points[i]->imag()))
        throw GeomError("non-finite coordinates");
      pts_[i] = *points[i];
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (i != inf_ && j != inf_ && pts_[i] == pts_[j])
        throw GeomError("finite points must be pairwise distinct");
}

Point PointConfiguration::at(int v) const {
  if (v < 0 || v >= size()) throw GeomError("vertex id out of range");
  if (v == inf_) throw GeomError("at(): infinite vertex has no coordinates");
  return pts_[v];
}

std::vector<int> PointConfiguration::free_ids() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (!is_gauge(v)) out.push_back(v);
  return out;
}

Cplx delta3(const PointConfiguration& cfg, int i, int j, int k) {
  if (i == j || j == k || i == k) throw GeomError("delta3: repeated ids");
  int ninf = cfg.is_infinite(i) + cfg.is_infinite(j) + cfg.is_infinite(k);
  if (ninf > 1) throw GeomError("delta3: more than one infinite vertex");
  if (ninf == 1) {
    if (cfg.is_infinite(i)) return cfg.at(j) - cfg.at(k);
    if (cfg.is_infinite(j)) return cfg.at(i) - cfg.at(k);
    return cfg.at(i) - cfg.at(j);
  }
  const Point zi = cfg.at(i), zj = cfg.at(j), zk = cfg.at(k);
  return (zi - zj) * (zi - zk) * (zj - zk);
}

Point mobius_point(const Mobius& m, Point z) {
  return (m[0] * z + m[1]) / (m[2] * z + m[3]);
}

PointConfiguration mobius_apply(const Mobius& m,
                                const PointConfiguration& cfg) {
  if (m[0] * m[3] - m[1] * m[2] == Cplx(0.0))
    throw GeomError("mobius_apply: singular matrix");
  std::vector<std::optional<Point>> out(cfg.size());
  for (int v = 0; v < cfg.size(); ++v) {
    if (cfg.is_infinite(v)) {
      if (m[2] == Cplx(0.0)) out[v] = std::nullopt;
      else out[v] = m[0] / m[2];
      continue;
    }
    const Point z = cfg.at(v);
    const Cplx den = m[2] * z + m[3];
    if (den == Cplx(0.0)) out[v] = std::nullopt;
    else out[v] = (m[0] * z + m[1]) / den;
  }
  return PointConfiguration(std::move(out), cfg.gauge());
}

}  // namespace delk
