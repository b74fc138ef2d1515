#pragma once

#include "delk/mc.hpp"
#include "delk/tri.hpp"

namespace delk {

/// Arc through p and q orthogonal to the given circumcircle; the line
/// through p, q when the edge is diametral.
GeneralizedCircle orthogonal_arc(const Circle& circ, Point p, Point q);

/// Arc through the endpoints of the interior edge at h making equal angles
/// (pi - theta(e))/2 with the two adjacent circumcircles. Degenerates to
/// the line through the endpoints for mirror-symmetric quads and to the
/// orthogonal arc at cocyclicity.
GeneralizedCircle bisector_arc(const Triangulation& t, int h);

/// z strictly inside the circumcircle of (a,b,c) and strictly outside the
/// three orthogonal disks. Equivalently the open ideal triangle on a, b, c
/// in the Poincare model of the circumdisk.
bool in_region_B(Point a, Point b, Point c, Point z);
bool in_region_B(const Triangulation& t, int f, Point z);

/// Membership in the face region bounded by the three bisector arcs,
/// decided through the angle coordinates: 0 < theta_i < pi/2 + theta(e_i)/2
/// for each edge e_i of f. Requires all three edges interior.
bool in_region_R(const Triangulation& t, int f, Point z);

/// Angle coordinates of z against the face (a,b,c): theta_i is associated
/// with the edge opposite vertex i and equals pi minus the circumcircle
/// intersection angle at the internal edge joining z to vertex i in the
/// four-point triangulation. They sum to pi for z inside the face and are
/// constant along circles through the opposite edge's endpoints.
std::array<double, 3> angle_coordinates(Point a, Point b, Point c, Point z);

/// Monte-Carlo integral of the four-point density D_{z zbar} over B(f),
/// by uniform sampling of the circumdisk with rejection. The exact value
/// is pi^2/16 for every face shape.
McEstimate integral_B(Point a, Point b, Point c, long long n_samples,
                      std::uint64_t seed, int n_batches = 100);

/// Same over R(f) (sampled from a disk of three circumradii, which covers
/// the region), together with the closed form
/// pi^2/16 + (1/16) sum_i theta(e_i)(2 pi - theta(e_i)).
struct RegionIntegral {
  McEstimate estimate;
  double closed_form = 0.0;
};
RegionIntegral integral_R(const Triangulation& t, int f, long long n_samples,
                          std::uint64_t seed, int n_batches = 100);

}  // namespace delk
