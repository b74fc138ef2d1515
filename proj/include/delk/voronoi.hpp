#pragma once

#include "delk/tri.hpp"

namespace delk {

/// Dual (Voronoi) graph of a Delaunay triangulation: one node per bounded
/// face at its circumcenter, one dual edge per interior primal edge.
struct DualEdge {
  int primal_he;      // half-edge with both faces bounded
  int face_n, face_s; // left and right faces of the half-edge
  double theta_n;     // Arg((w_n - z1)/(z2 - z1))
  double theta_s;     // Arg((z2 - z1)/(w_s - z1))
};

struct DualGraph {
  std::vector<int> faces;          // bounded face ids (nodes)
  std::vector<Point> centers;      // circumcenters, aligned with faces
  std::vector<DualEdge> edges;
  int node_of(int face) const;
};

DualGraph dual_graph(const Triangulation& t);

/// Geodesic length of the dual edge in the glued Beltrami metric:
/// (1/2) log[(1+sin th_n)(1+sin th_s) / ((1-sin th_n)(1-sin th_s))].
double dual_length_hyperbolic(const DualEdge& e);

/// Flat variant 2 sin((th_n + th_s)/2).
double dual_length_flat(const DualEdge& e);

/// Shortest dual-graph distance between two bounded faces with the given
/// edge length function. Desk-scale Dijkstra.
double dual_distance(const DualGraph& g, int face_a, int face_b,
                     bool hyperbolic = true);

/// One-parameter family of configurations crossing a cocyclic event for
/// the edge (u,v): linear interpolation of the free points from cfg_a to
/// cfg_b. Reports the dual-edge length on both sides of the crossing and
/// the continuity of a fixed-node-pair distance across it.
struct FlipContinuityReport {
  double s_star = 0.0;          // crossing parameter
  double length_at_crossing = 0.0;
  double length_flat_at_crossing = 0.0;
  double distance_jump = 0.0;   // |d(s*+eps) - d(s*-eps)|
  bool transversal = false;
};
FlipContinuityReport flip_continuity_check(const PointConfiguration& cfg_a,
                                           const PointConfiguration& cfg_b,
                                           int u, int v, double eps = 1e-7);

}  // namespace delk
