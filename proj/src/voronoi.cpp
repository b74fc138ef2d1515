#include "delk/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace delk {

namespace {
constexpr double kPi = 3.14159265358979323846;

Point circumcenter_of(const Triangulation& t, int f) {
  const auto v = t.face_vertices(f);
  const auto& c = t.config();
  const auto g = circumcircle(c.at(v[0]), c.at(v[1]), c.at(v[2]));
  return std::get<Circle>(g).center;
}

PointConfiguration lerp_config(const PointConfiguration& a,
                               const PointConfiguration& b, double s) {
  if (a.size() != b.size()) throw GeomError("config path: size mismatch");
  std::vector<std::optional<Point>> pts;
  for (int v = 0; v < a.size(); ++v) {
    if (a.is_infinite(v) != b.is_infinite(v))
      throw GeomError("config path: infinite vertex mismatch");
    if (a.is_infinite(v)) pts.push_back(std::nullopt);
    else pts.push_back((1.0 - s) * a.at(v) + s * b.at(v));
  }
  return PointConfiguration(std::move(pts), a.gauge());
}

bool has_interior_edge(const Triangulation& t, int u, int v) {
  const int h = t.find_halfedge(u, v);
  return h >= 0 && t.edge_interior(h);
}

}  // namespace

int DualGraph::node_of(int face) const {
  auto it = std::find(faces.begin(), faces.end(), face);
  if (it == faces.end()) throw GeomError("dual_graph: face is not a node");
  return static_cast<int>(it - faces.begin());
}

DualGraph dual_graph(const Triangulation& t) {
  DualGraph g;
  const auto& c = t.config();
  std::vector<int> node_of_face(t.face_count(), -1);
  for (int f : t.bounded_faces()) {
    node_of_face[f] = static_cast<int>(g.faces.size());
    g.faces.push_back(f);
    g.centers.push_back(circumcenter_of(t, f));
  }
  for (int h : t.edges()) {
    if (!t.edge_interior(h)) continue;
    DualEdge e;
    e.primal_he = h;
    e.face_n = t.face_of(h);
    e.face_s = t.face_of(t.twin(h));
    const Point z1 = c.at(t.origin(h)), z2 = c.at(t.dest(h));
    const Point wn = g.centers[node_of_face[e.face_n]];
    const Point ws = g.centers[node_of_face[e.face_s]];
    e.theta_n = std::arg((wn - z1) / (z2 - z1));
    e.theta_s = std::arg((z2 - z1) / (ws - z1));
    g.edges.push_back(e);
  }
  return g;
}

double dual_length_hyperbolic(const DualEdge& e) {
  if (std::abs(e.theta_n) >= kPi / 2 || std::abs(e.theta_s) >= kPi / 2)
    throw GeomError("dual_length_hyperbolic: angle out of range");
  const double sn = std::sin(e.theta_n), ss = std::sin(e.theta_s);
  return 0.5 * std::log((1 + sn) * (1 + ss) / ((1 - sn) * (1 - ss)));
}

double dual_length_flat(const DualEdge& e) {
  return 2.0 * std::sin((e.theta_n + e.theta_s) / 2.0);
}

double dual_distance(const DualGraph& g, int face_a, int face_b,
                     bool hyperbolic) {
  const int n = static_cast<int>(g.faces.size());
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : g.edges) {
    // lengths are nonnegative up to rounding at cocyclic events; clamp so
    // the search never sees a negative weight
    const double w = std::max(
        0.0, hyperbolic ? dual_length_hyperbolic(e) : dual_length_flat(e));
    const int a = g.node_of(e.face_n), b = g.node_of(e.face_s);
    adj[a].push_back({b, w});
    adj[b].push_back({a, w});
  }
  const int src = g.node_of(face_a), dst = g.node_of(face_b);
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::priority_queue<std::pair<double, int>,
                      std::vector<std::pair<double, int>>, std::greater<>>
      pq;
  dist[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u])
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.push({dist[v], v});
      }
  }
  return dist[dst];
}

FlipContinuityReport flip_continuity_check(const PointConfiguration& cfg_a,
                                           const PointConfiguration& cfg_b,
                                           int u, int v, double eps) {
  FlipContinuityReport rep;
  const bool at0 = has_interior_edge(delaunay(lerp_config(cfg_a, cfg_b, 0)), u, v);
  const bool at1 = has_interior_edge(delaunay(lerp_config(cfg_a, cfg_b, 1)), u, v);
  if (at0 == at1)
    throw GeomError("flip_continuity_check: path does not cross a flip of "
                    "the given edge");
  rep.transversal = true;
  double lo = 0.0, hi = 1.0;  // edge present at lo side
  if (!at0) std::swap(lo, hi);
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (has_interior_edge(delaunay(lerp_config(cfg_a, cfg_b, mid)), u, v))
      lo = mid;
    else
      hi = mid;
  }
  rep.s_star = 0.5 * (lo + hi);

  // the bisection resolves the crossing to ~2^-80; evaluate the vanishing
  // length at the inner endpoint itself
  const Triangulation tb = delaunay(lerp_config(cfg_a, cfg_b, lo));
  const DualGraph gb = dual_graph(tb);
  for (const auto& e : gb.edges) {
    const int h = e.primal_he;
    const bool match = (tb.origin(h) == u && tb.dest(h) == v) ||
                       (tb.origin(h) == v && tb.dest(h) == u);
    if (match) {
      rep.length_at_crossing = dual_length_hyperbolic(e);
      rep.length_flat_at_crossing = dual_length_flat(e);
      break;
    }
  }

  // distance continuity between two faces that persist across the flip,
  // evaluated a transversal eps on each side
  const double dir = hi >= lo ? 1.0 : -1.0;
  const Triangulation ta =
      delaunay(lerp_config(cfg_a, cfg_b, hi + dir * eps));
  const DualGraph ga = dual_graph(ta);
  auto key_of = [](const Triangulation& t, int f) {
    auto w = t.face_vertices(f);
    std::sort(w.begin(), w.end());
    return w;
  };
  std::vector<std::array<int, 3>> common;
  for (int fb : gb.faces) {
    const auto kb = key_of(tb, fb);
    for (int fa : ga.faces)
      if (key_of(ta, fa) == kb) {
        common.push_back(kb);
        break;
      }
  }
  if (common.size() >= 2) {
    auto face_by_key = [&](const Triangulation& t, const DualGraph& g,
                           const std::array<int, 3>& k) {
      for (int f : g.faces)
        if (key_of(t, f) == k) return f;
      throw GeomError("flip_continuity_check: lost face");
    };
    const auto ka = common.front(), kb2 = common.back();
    const double d_before = dual_distance(
        gb, face_by_key(tb, gb, ka), face_by_key(tb, gb, kb2));
    const double d_after = dual_distance(
        ga, face_by_key(ta, ga, ka), face_by_key(ta, ga, kb2));
    rep.distance_jump = std::abs(d_after - d_before);
  }
  return rep;
}

}  // namespace delk
