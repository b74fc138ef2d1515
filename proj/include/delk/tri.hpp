#pragma once

#include <map>
#include <string>
#include <vector>

#include "delk/geom.hpp"

namespace delk {

/// Oriented half-edge triangulation of the sphere over a PointConfiguration.
/// Bounded faces are ccw triangles of finite vertices; the unbounded faces
/// have the infinite vertex as apex and carry the reversed hull edge.
/// Completed instances are immutable snapshots; mutating operations return
/// new values.
class Triangulation {
 public:
  struct HalfEdge {
    int origin = -1;
    int twin = -1;
    int next = -1;
    int face = -1;
  };

  const PointConfiguration& config() const { return cfg_; }
  int vertex_count() const { return cfg_.size(); }
  int halfedge_count() const { return static_cast<int>(he_.size()); }
  int face_count() const { return static_cast<int>(face_he_.size()); }

  const HalfEdge& he(int h) const { return he_[h]; }
  int next(int h) const { return he_[h].next; }
  int prev(int h) const { return he_[he_[h].next].next; }
  int twin(int h) const { return he_[h].twin; }
  int origin(int h) const { return he_[h].origin; }
  int dest(int h) const { return he_[he_[h].next].origin; }
  int face_of(int h) const { return he_[h].face; }
  int apex_of_he(int h) const { return origin(prev(h)); }  // third vertex

  int face_halfedge(int f) const { return face_he_[f]; }
  std::array<int, 3> face_vertices(int f) const;
  bool face_bounded(int f) const;
  std::vector<int> bounded_faces() const;

  /// Half-edge from u to v, or -1.
  int find_halfedge(int u, int v) const;
  /// Canonical edge ids: min(h, twin(h)) over all half-edges, sorted.
  std::vector<int> edges() const;
  /// True if both adjacent faces are bounded.
  bool edge_interior(int h) const;
  /// One outgoing half-edge per vertex.
  int vertex_halfedge(int v) const { return vert_he_[v]; }
  /// Outgoing half-edges of v in ccw order.
  std::vector<int> vertex_star(int v) const;
  /// All incident faces bounded?
  bool vertex_interior(int v) const;

  /// Circumcircle intersection angle of the edge carried by h (same value
  /// for h and its twin).
  double edge_theta(int h) const;

  /// Canonical key (sorted normalized face triples) for deduplication.
  std::string face_key() const;

  /// Exhaustive exact empty-circumdisk check (test oracle).
  bool is_delaunay() const;

  // --- construction & mutation (value-returning) ---
  friend Triangulation delaunay(const PointConfiguration& cfg);
  friend Triangulation flip(const Triangulation& t, int h);
  friend Triangulation insert_in_face(const Triangulation& t, int f, Point z);
  friend class MeshBuilder;

 private:
  PointConfiguration cfg_;
  std::vector<HalfEdge> he_;
  std::vector<int> face_he_;
  std::vector<int> vert_he_;
};

struct FlipRecord {
  std::array<int, 2> old_edge;
  std::array<int, 2> new_edge;
};

struct AnglePattern {
  std::map<std::pair<int, int>, double> theta;  // (min id, max id) -> theta
  double at(int u, int v) const;
};

struct ContourViolation {
  std::vector<int> cycle;  // face ids
  double sum;
};
struct ContourReport {
  int cycles_checked = 0;
  double min_sum = 0.0;
  std::vector<ContourViolation> violations;  // sum < 2*pi - 1e-9
};

/// Delaunay triangulation of the configuration: every bounded face has an
/// empty circumdisk (exact predicate), hull edges joined to the infinite
/// vertex. Cocyclic ties are canonicalized to the lexicographically smaller
/// diagonal, so the result depends only on the configuration.
Triangulation delaunay(const PointConfiguration& cfg);

/// Flip the interior edge carried by half-edge h; both adjacent faces must
/// be bounded and form a strictly convex quadrilateral.
Triangulation flip(const Triangulation& t, int h);
int find_flippable(const Triangulation& t, int u, int v);  // throws if none

/// Lawson restoration: flips exact-incircle violations until Delaunay, then
/// canonicalizes ties; combinatorially equal to delaunay(config).
std::pair<Triangulation, std::vector<FlipRecord>> lawson_restore(
    const Triangulation& t);

/// Join z (strictly inside bounded face f) to the three corners of f.
/// No legalization is performed.
Triangulation insert_in_face(const Triangulation& t, int f, Point z);

/// Face containing z, by straight walk with exhaustive fallback. Edge and
/// unbounded-face ties resolve toward the smaller face id.
int locate(const Triangulation& t, Point z);

/// All triangulations reachable from Delaunay by legal interior flips,
/// deduplicated by face key. Throws when the vertex count exceeds the cap.
std::vector<Triangulation> enumerate_triangulations(
    const PointConfiguration& cfg, int max_vertices = 9);

AnglePattern angle_pattern(const Triangulation& t);

/// Sums of crossed-edge angles over simple dual-graph cycles up to
/// max_cycle_len; Delaunay input should satisfy sum >= 2*pi - 1e-9.
ContourReport check_contour_condition(const Triangulation& t,
                                      const AnglePattern& pattern,
                                      int max_cycle_len);

}  // namespace delk
