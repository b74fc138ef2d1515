#pragma once

#include <map>

#include "delk/kahler.hpp"
#include "delk/tri.hpp"

namespace delk {

/// Real coordinate basis over the free vertices, ordered
/// (x_{v}, y_{v}) by ascending free vertex id. Gauge-fixed vertices carry
/// no coordinates (their differentials vanish).
struct FreeBasis {
  std::vector<int> free;
  static FreeBasis of(const PointConfiguration& cfg);
  int dim() const { return 2 * static_cast<int>(free.size()); }
  /// Index of the x (c=0) or y (c=1) coordinate of vertex v; -1 if fixed.
  int coord(int v, int c) const;
};

/// Tangent vector in a FreeBasis.
struct TangentVector {
  std::vector<double> comp;
};

/// Antisymmetric bilinear form; entries stored pairwise so antisymmetry is
/// exact by construction.
class TwoForm {
 public:
  TwoForm() = default;
  explicit TwoForm(int dim) : dim_(dim), m_(static_cast<std::size_t>(dim) * dim, 0.0) {}
  int dim() const { return dim_; }
  double operator()(int i, int j) const {
    return m_[static_cast<std::size_t>(i) * dim_ + j];
  }
  void add(int i, int j, double v) {
    m_[static_cast<std::size_t>(i) * dim_ + j] += v;
    m_[static_cast<std::size_t>(j) * dim_ + i] -= v;
  }
  double eval(const TangentVector& s, const TangentVector& t) const;
  TwoForm& operator+=(const TwoForm& o);
  const std::vector<double>& raw() const { return m_; }

 private:
  int dim_ = 0;
  std::vector<double> m_;
};

struct OneForm {
  std::vector<double> comp;
  double eval(const TangentVector& t) const;
};

/// Horocycle decoration: a positive Euclidean horosphere radius per finite
/// vertex, plus a height for the infinite vertex.
struct Decoration {
  std::map<int, double> radius;
  double h_inf = 1.0;
  static Decoration constant(const PointConfiguration& cfg, double r);
  double at(int v) const;
};

/// Per-face two-form from the complex log differentials of the side
/// vectors, restricted to free coordinates. Faces are taken ccw and the
/// total over faces is oriented so that its Pfaffian coefficient equals
/// det of the Kahler matrix.
TwoForm omega_face_z(const FreeBasis& basis, const PointConfiguration& cfg,
                     const std::array<int, 3>& face);

/// Same form built from gradients of the side log-lengths
/// lambda_ij = log|z_j - z_i| alone.
TwoForm omega_face_lengths(const FreeBasis& basis,
                           const PointConfiguration& cfg,
                           const std::array<int, 3>& face);

/// Total Kahler two-form: sum of omega_face_z over bounded faces.
TwoForm omega_total(const Triangulation& t);

/// Coefficient of Omega^N / N! against dx_1 ^ dy_1 ^ ... (the Pfaffian of
/// the coordinate matrix). Throws on odd dimension.
double top_coefficient(const TwoForm& omega, int npairs);

/// lambda-length |z_i - z_j| / sqrt(4 R_i R_j).
double lambda_length(Point zi, Point zj, double ri, double rj);

/// Weil-Petersson two-form: face sum of d log Lambda wedges at fixed
/// decoration; independent of the decoration and equal to twice the
/// Kahler two-form.
TwoForm wp_form(const Triangulation& t, const Decoration& dec);

/// Vertex Chern form (1/(2pi)^2) sum_{e'<e at v} d theta(e) ^ d theta(e'),
/// edges labelled ccw starting from the incident edge with the smallest
/// far endpoint. Gradients by central differences with the combinatorics
/// pinned. Hull vertices are rejected unless allow_hull is set (the spoke
/// angles are used in that exploratory mode). anchor_offset rotates the
/// starting label; the dependence of the form on it is an observable, not
/// an invariance.
TwoForm chern_form_vertex(const Triangulation& t, int v, double step = 1e-5,
                          bool allow_hull = false, int anchor_offset = 0);

/// Connection one-form (1/(2pi)^2) sum_{faces f at v} theta(f_+) d gamma,
/// gamma the angle from the reference ray at v to the circumcenter of f,
/// f_+ the ccw-first edge of f at v.
OneForm connection_form_vertex(const Triangulation& t, int v,
                               double reference_angle = 0.0,
                               double step = 1e-5);

/// Jump of sum_v u_v across the flip of the near-cocyclic edge (u,v),
/// against the closed-form expression in the quad angles. Both sides as
/// one-forms on the free coordinates; conventions (global sign, diagonal
/// sign) are scanned and the best match reported.
struct FlipDiscontinuity {
  std::array<int, 4> labels;  // v1, v2, v3, v4
  OneForm lhs;
  OneForm rhs;        // best-matching convention
  double rel_error;   // under that convention
  int sign_global;    // +-1
  int sign_diag;      // +-1 applied to the diagonal term
};
FlipDiscontinuity flip_discontinuity(const PointConfiguration& cfg, int u,
                                     int v, double step = 1e-5);

}  // namespace delk
