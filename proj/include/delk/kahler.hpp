#pragma once

#include <array>
#include <vector>

#include "delk/linalg.hpp"
#include "delk/tri.hpp"

namespace delk {

/// Lobachevsky function L(x) = -int_0^x log|2 sin t| dt, evaluated to an
/// absolute error below 1e-12. Odd and pi-periodic.
double lobachevsky(double x);

/// Hyperbolic volume of the ideal tetrahedron with vertices (a, b, c, inf)
/// on the boundary of H^3: the sum of Lobachevsky values of the triangle
/// angles. Zero for collinear triples; maximal for equilateral ones.
double ideal_tetra_volume(Point a, Point b, Point c);

/// Prepotential: minus the sum of ideal tetrahedron volumes over all faces
/// (unbounded faces contribute zero). Always <= 0.
double prepotential(const Triangulation& t);

/// Hermitian matrix indexed by the finite vertices (ascending vertex id).
struct KahlerMatrix {
  std::vector<int> labels;
  CMat mat;
  int index_of(int v) const;
};

/// Kahler matrix assembled per bounded face from the vertex-edge couplings
/// A_{u,e} = 1/(z_u - z_u') and the edge-adjacency signs (+1 when the
/// second edge follows the first clockwise within the face). Equals the
/// mixed Wirtinger Hessian of the prepotential; positive semidefinite for
/// positively oriented triangulations.
KahlerMatrix kahler_matrix(const Triangulation& t);

/// Independent oracle: central-difference real Hessian of the prepotential
/// with respect to the free coordinates, with the combinatorics pinned,
/// recombined as D = ((Hxx + Hyy) + i (Hxy - Hyx)) / 4. Labels hold the
/// free vertices only. When `check_flips` is set and t is the Delaunay
/// triangulation of its configuration, perturbations that change the
/// Delaunay combinatorics raise an error advising a smaller step.
KahlerMatrix kahler_matrix_fd(const Triangulation& t, double step = 1e-4,
                              bool check_flips = true);

/// Determinant of the principal submatrix with the given vertex ids
/// removed (the infinite vertex has no row and may be listed). Empty
/// remainder gives 1.
double det_excluding(const KahlerMatrix& m, const std::vector<int>& exclude);

/// d_(triple) / |Delta3(triple)|^2 with the reduced discriminant; the
/// triple must contain the infinite vertex plus two finite vertices.
double normalized_det(const Triangulation& t, const std::array<int, 3>& triple);

/// Density 2^N det D of the measure with respect to prod d^2z over the
/// free vertices, evaluated on the Delaunay triangulation.
double measure_density(const PointConfiguration& cfg);

/// Predicted determinant change under the flip of the interior edge at h.
/// Labels (v1,v2,v4) span the face of h (v2 = origin, v4 = dest, v1 its
/// apex) and v3 is the opposite apex; `predicted` approximates
/// d_(v1,v2,v4)(T) - d_(v1,v2,v4)(flip(T)).
struct FlipDelta {
  int v1, v2, v3, v4;
  double predicted;
};
FlipDelta flip_delta_predicted(const Triangulation& t, int h);

/// D_{z zbar} entry of the four-point configuration (a,b,c,z) triangulated
/// by joining z to the corners of (a,b,c).
double four_point_dzz(Point a, Point b, Point c, Point z);

}  // namespace delk
