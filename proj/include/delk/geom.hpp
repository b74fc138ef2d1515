#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "delk/exactpred.hpp"

namespace delk {

using Cplx = std::complex<double>;

/// Point in the plane chart. The point at infinity is never stored as a
/// Point; configurations track it by vertex id instead.
using Point = Cplx;

struct GeomError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double cross(Cplx u, Cplx v) {
  return u.real() * v.imag() - u.imag() * v.real();
}
inline double dot(Cplx u, Cplx v) {
  return u.real() * v.real() + u.imag() * v.imag();
}

/// Wrap into (-pi, pi].
double wrap_pi(double a);

int orient2d(Point a, Point b, Point c);
int incircle(Point a, Point b, Point c, Point d);  // (a,b,c) ccw required

/// Circle or line. Lines stand in for circumcircles through the infinite
/// vertex (and for degenerate bisector arcs).
struct Circle {
  Point center;
  double radius = 0.0;  // > 0
};
struct Line {
  Point anchor;
  Cplx direction;  // unit modulus
};
using GeneralizedCircle = std::variant<Circle, Line>;

bool is_line(const GeneralizedCircle& g);

/// Signed side of a generalized circle: +1 strictly inside (left of a
/// line), -1 strictly outside (right), 0 on the boundary within eps.
int circle_side(const GeneralizedCircle& g, Point z, double eps = 0.0);

/// Crossing angle of two generalized circles in [0, pi/2], measured between
/// tangent lines at a common point. Requires that they actually intersect.
double circle_crossing_angle(const GeneralizedCircle& a,
                             const GeneralizedCircle& b);

/// Circumcircle of three distinct points; the Line through a and b when the
/// three are collinear. Use line_through for pairs involving infinity.
GeneralizedCircle circumcircle(Point a, Point b, Point c);
GeneralizedCircle line_through(Point a, Point b);

/// Interior angles at a, b, c of a nondegenerate triangle; they sum to pi.
std::array<double, 3> triangle_angles(Point a, Point b, Point c);

/// Circumcircle intersection angle of the edge (v1,v2) whose two adjacent
/// oriented faces have apexes s and t (t on the twin side). An absent apex
/// means the face has its apex at infinity, whose circumcircle is the line
/// through v1 and v2. The result lies in (-pi, pi]; it is 0 exactly when
/// the four points are cocyclic and nonnegative when the pair is locally
/// Delaunay.
double edge_angle(Point v1, Point v2, std::optional<Point> s,
                  std::optional<Point> t);

/// Labeled points with three gauge-fixed vertices, one of which is the
/// vertex at infinity in the supported chart.
class PointConfiguration {
 public:
  PointConfiguration() = default;

  /// Gauge (0, 1, inf) at ids (0, 1, 2), free points from id 3 on.
  static PointConfiguration standard(const std::vector<Point>& free_points);

  /// Fully general constructor: `points[i]` is nullopt for the infinite
  /// vertex. Validates distinctness and the single-infinity rule.
  PointConfiguration(std::vector<std::optional<Point>> points,
                     std::array<int, 3> gauge);

  int size() const { return static_cast<int>(pts_.size()); }
  bool is_infinite(int v) const { return v == inf_; }
  int infinite_vertex() const { return inf_; }           // -1 if none
  bool has_infinite_vertex() const { return inf_ >= 0; }
  Point at(int v) const;
  const std::array<int, 3>& gauge() const { return gauge_; }
  bool is_gauge(int v) const {
    return v == gauge_[0] || v == gauge_[1] || v == gauge_[2];
  }
  std::vector<int> free_ids() const;
  int free_count() const { return size() - 3; }

 private:
  std::vector<Point> pts_;  // entry at inf_ is unused
  int inf_ = -1;
  std::array<int, 3> gauge_{0, 1, 2};
};

/// Triple discriminant (z_i - z_j)(z_i - z_k)(z_j - z_k). When one vertex is
/// infinite, the reduced value: the difference of the two finite
/// coordinates (finite rescaling limit of Delta3 / z_inf^2).
Cplx delta3(const PointConfiguration& cfg, int i, int j, int k);

/// Moebius map z -> (m00 z + m01)/(m10 z + m11), det != 0. Applied to every
/// vertex; a pole maps to the infinite vertex, the old infinite vertex maps
/// to m00/m10 (or stays infinite when m10 == 0).
using Mobius = std::array<Cplx, 4>;  // row-major 2x2
PointConfiguration mobius_apply(const Mobius& m, const PointConfiguration& cfg);
Point mobius_point(const Mobius& m, Point z);

}  // namespace delk
