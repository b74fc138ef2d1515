#include "delk/tri.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace delk {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The finite directed half-edge of an unbounded face.
int finite_he_of(const Triangulation& t, int f) {
  int h = t.face_halfedge(f);
  for (int i = 0; i < 3; ++i) {
    if (!t.config().is_infinite(t.origin(h)) &&
        !t.config().is_infinite(t.dest(h)))
      return h;
    h = t.next(h);
  }
  throw GeomError("unbounded face without finite edge");
}

// Straight walk to the face containing z. Sets on_he >= 0 when z lies on
// the open edge carried by that half-edge. Guaranteed to terminate on
// Delaunay meshes; the step cap guards everything else.
int walk_locate(const Triangulation& t, Point z, int& on_he) {
  const auto& c = t.config();
  on_he = -1;
  int f = 0;
  for (int fi = 0; fi < t.face_count(); ++fi)
    if (t.face_bounded(fi)) {
      f = fi;
      break;
    }
  const int cap = 8 * (t.face_count() + 4);
  for (int step = 0; step < cap; ++step) {
    if (!t.face_bounded(f)) {
      const int fe = finite_he_of(t, f);
      const int u = t.origin(fe), v = t.dest(fe);
      const int o = orient2d(c.at(u), c.at(v), z);
      if (o < 0) {
        f = t.face_of(t.twin(fe));
        continue;
      }
      if (o > 0) return f;
      const Cplx d = c.at(v) - c.at(u);
      const double s = dot(z - c.at(u), d);
      if (s <= 0.0) {  // beyond u: cross the spoke at u
        f = t.face_of(t.twin(t.prev(fe)));
        continue;
      }
      if (s >= std::norm(d)) {  // beyond v
        f = t.face_of(t.twin(t.next(fe)));
        continue;
      }
      on_he = fe;
      return f;
    }
    int h = t.face_halfedge(f);
    bool moved = false;
    int zero_he = -1;
    for (int i = 0; i < 3; ++i) {
      const int o = orient2d(c.at(t.origin(h)), c.at(t.dest(h)), z);
      if (o < 0) {
        f = t.face_of(t.twin(h));
        moved = true;
        break;
      }
      if (o == 0) zero_he = h;
      h = t.next(h);
    }
    if (moved) continue;
    if (zero_he >= 0) on_he = zero_he;
    return f;
  }
  throw GeomError("point location walk failed to terminate");
}

}  // namespace

// ---------------------------------------------------------------------------
// Mesh mutation machinery. Operates on a Triangulation's private arrays;
// all geometric decisions are made by the callers with exact predicates.
class MeshBuilder {
 public:
  explicit MeshBuilder(Triangulation& t) : t_(t) {}

  Triangulation& t_;

  int add_he(int origin) {
    t_.he_.push_back({origin, -1, -1, -1});
    return static_cast<int>(t_.he_.size()) - 1;
  }
  int add_face() {
    t_.face_he_.push_back(-1);
    return static_cast<int>(t_.face_he_.size()) - 1;
  }
  void link(int a, int b) {  // twins
    t_.he_[a].twin = b;
    t_.he_[b].twin = a;
  }
  void set_face(int f, int h0, int h1, int h2) {
    t_.face_he_[f] = h0;
    t_.he_[h0].next = h1;
    t_.he_[h1].next = h2;
    t_.he_[h2].next = h0;
    t_.he_[h0].face = t_.he_[h1].face = t_.he_[h2].face = f;
  }
  void note_vertex(int v, int h) { t_.vert_he_[v] = h; }

  void init_shell(int p, int q, int inf) {
    t_.he_.clear();
    t_.face_he_.clear();
    t_.vert_he_.assign(t_.cfg_.size(), -1);
    int h0 = add_he(p), h1 = add_he(q), h2 = add_he(inf);
    int h3 = add_he(q), h4 = add_he(p), h5 = add_he(inf);
    int f0 = add_face(), f1 = add_face();
    set_face(f0, h0, h1, h2);
    set_face(f1, h3, h4, h5);
    link(h0, h3);
    link(h1, h5);
    link(h2, h4);
    note_vertex(p, h0);
    note_vertex(q, h1);
    note_vertex(inf, h2);
  }

  // Rotate the diagonal of the two faces at h. Combinatorial only.
  void flip_edge(int h) {
    Triangulation& t = t_;
    const int h2 = t.twin(h);
    const int h1n = t.next(h), h1p = t.next(h1n);
    const int h2n = t.next(h2), h2p = t.next(h2n);
    const int u = t.origin(h), v = t.origin(h2);
    const int a = t.origin(h1p), b = t.origin(h2p);
    const int f1 = t.face_of(h), f2 = t.face_of(h2);
    t.he_[h].origin = b;
    t.he_[h2].origin = a;
    set_face(f1, h, h1p, h2n);
    set_face(f2, h2, h2p, h1n);
    if (t.vert_he_[u] == h) t.vert_he_[u] = h2n;
    if (t.vert_he_[v] == h2) t.vert_he_[v] = h1n;
    (void)u;
    (void)v;
  }

  // Split face f by the (already registered) vertex w: 1 -> 3 faces.
  void split_face(int f, int w) {
    Triangulation& t = t_;
    const int e0 = t.face_he_[f];
    const int e1 = t.next(e0), e2 = t.next(e1);
    const int v0 = t.origin(e0), v1 = t.origin(e1), v2 = t.origin(e2);
    // spokes: si = vi -> w, ri = w -> vi
    int s0 = add_he(v0), r0 = add_he(w);
    int s1 = add_he(v1), r1 = add_he(w);
    int s2 = add_he(v2), r2 = add_he(w);
    link(s0, r0);
    link(s1, r1);
    link(s2, r2);
    const int fa = f, fb = add_face(), fc = add_face();
    set_face(fa, e0, s1, r0);
    set_face(fb, e1, s2, r1);
    set_face(fc, e2, s0, r2);
    note_vertex(w, r0);
    note_vertex(v0, e0);
    note_vertex(v1, e1);
    note_vertex(v2, e2);
  }

  // Split the edge at h by vertex w: 2 -> 4 faces.
  void split_edge(int h, int w) {
    Triangulation& t = t_;
    const int h2 = t.twin(h);
    const int h1n = t.next(h), h1p = t.next(h1n);
    const int h2n = t.next(h2), h2p = t.next(h2n);
    const int u = t.origin(h), v = t.origin(h2);
    const int a = t.origin(h1p), b = t.origin(h2p);
    // h becomes u->w, h2 becomes w->u; new pair for (w,v)/(v,w).
    int wv = add_he(w), vw = add_he(v);
    link(wv, vw);
    t.he_[h2].origin = w;
    // apex connectors
    int wa = add_he(w), aw = add_he(a);
    int wb = add_he(w), bw = add_he(b);
    link(wa, aw);
    link(wb, bw);
    const int f1 = t.face_of(h), f2 = t.face_of(h2);
    const int f3 = add_face(), f4 = add_face();
    set_face(f1, h, wa, h1p);    // (u, w, a)
    set_face(f3, wv, h1n, aw);   // (w, v, a)
    set_face(f2, h2, h2n, bw);   // (w, u, b)
    set_face(f4, vw, wb, h2p);   // (v, w, b)
    note_vertex(w, wv);
    note_vertex(v, vw);
    note_vertex(u, h);
    (void)b;
  }

  Point at(int v) const { return t_.cfg_.at(v); }
  bool inf(int v) const { return t_.cfg_.is_infinite(v); }

  int orient_v(int a, int b, int c) const {
    return orient2d(at(a), at(b), at(c));
  }

  // d strictly inside the circumdisk of face_of(h)? Infinity-aware.
  bool in_circumdisk(int h, int d) const {
    const Triangulation& t = t_;
    const int f = t.face_of(h);
    if (t.face_bounded(f)) {
      if (inf(d)) return false;
      int e = t.face_he_[f];
      return incircle(at(t.origin(e)), at(t.dest(e)),
                      at(t.apex_of_he(e)), at(d)) > 0;
    }
    if (inf(d)) return false;
    const int fe = finite_he_of(t, f);
    return orient_v(t.origin(fe), t.dest(fe), d) > 0;
  }

  // Legalize the edges on the stack; every entry must have the new vertex z
  // as the apex opposite it.
  void legalize(std::vector<int> stack, int z) {
    Triangulation& t = t_;
    while (!stack.empty()) {
      int h = stack.back();
      stack.pop_back();
      const int h2 = t.twin(h);
      const int d = t.apex_of_he(h2);
      if (!in_circumdisk(h, d)) continue;
      const int h2n = t.next(h2), h2p = t.next(h2n);
      flip_edge(h);
      stack.push_back(h2n);
      stack.push_back(h2p);
      (void)z;
    }
  }

  // Insert vertex w (finite, already in cfg) into the current Delaunay mesh.
  void insert_delaunay(int w) {
    Triangulation& t = t_;
    int on_he = -1;
    const int f = walk_locate(t, at(w), on_he);
    if (on_he >= 0) split_edge(on_he, w);
    else split_face(f, w);
    std::vector<int> stack;
    for (int out : t.vertex_star(w)) stack.push_back(t.next(out));
    legalize(std::move(stack), w);
  }

  // Lexicographic tie canonicalization on cocyclic quads.
  void canonicalize_ties() {
    Triangulation& t = t_;
    for (int guard = 0; guard < 100; ++guard) {
      bool changed = false;
      for (int h = 0; h < t.halfedge_count(); ++h) {
        if (h > t.twin(h)) continue;
        if (!t.edge_interior(h)) continue;
        const int u = t.origin(h), v = t.dest(h);
        const int a = t.apex_of_he(h), b = t.apex_of_he(t.twin(h));
        if (incircle(at(u), at(v), at(a), at(b)) != 0) continue;
        const auto cur = std::minmax(u, v);
        const auto alt = std::minmax(a, b);
        if (alt < cur && orient_v(a, u, b) > 0 && orient_v(b, v, a) > 0) {
          flip_edge(h);
          changed = true;
        }
      }
      if (!changed) return;
    }
    throw GeomError("tie canonicalization failed to settle");
  }
};

// ---------------------------------------------------------------------------

std::array<int, 3> Triangulation::face_vertices(int f) const {
  const int h = face_he_[f];
  return {origin(h), origin(next(h)), origin(next(next(h)))};
}

bool Triangulation::face_bounded(int f) const {
  for (int v : face_vertices(f))
    if (cfg_.is_infinite(v)) return false;
  return true;
}

std::vector<int> Triangulation::bounded_faces() const {
  std::vector<int> out;
  for (int f = 0; f < face_count(); ++f)
    if (face_bounded(f)) out.push_back(f);
  return out;
}

int Triangulation::find_halfedge(int u, int v) const {
  for (int h : vertex_star(u))
    if (dest(h) == v) return h;
  return -1;
}

std::vector<int> Triangulation::edges() const {
  std::vector<int> out;
  for (int h = 0; h < halfedge_count(); ++h)
    if (h < twin(h)) out.push_back(h);
  return out;
}

bool Triangulation::edge_interior(int h) const {
  return face_bounded(face_of(h)) && face_bounded(face_of(twin(h)));
}

std::vector<int> Triangulation::vertex_star(int v) const {
  std::vector<int> out;
  const int h0 = vert_he_[v];
  int h = h0;
  do {
    out.push_back(h);
    h = twin(prev(h));  // ccw
    if (out.size() > he_.size()) throw GeomError("corrupt vertex star");
  } while (h != h0);
  return out;
}

bool Triangulation::vertex_interior(int v) const {
  if (cfg_.is_infinite(v)) return false;
  for (int h : vertex_star(v))
    if (!face_bounded(face_of(h))) return false;
  return true;
}

double Triangulation::edge_theta(int h) const {
  const int v1 = origin(h), v2 = dest(h);
  const int s = apex_of_he(h), t = apex_of_he(twin(h));
  const bool i1 = cfg_.is_infinite(v1), i2 = cfg_.is_infinite(v2);
  if (i1 || i2) {
    // spoke: the contribution of the infinite endpoint cancels pairwise
    const Point w = cfg_.at(i1 ? v2 : v1);
    const Point ps = cfg_.at(s), pt = cfg_.at(t);
    const Cplx r = i1 ? (w - ps) / (w - pt) : (w - pt) / (w - ps);
    return wrap_pi(kPi - std::arg(r));
  }
  auto apex_pt = [&](int a) -> std::optional<Point> {
    if (cfg_.is_infinite(a)) return std::nullopt;
    return cfg_.at(a);
  };
  return edge_angle(cfg_.at(v1), cfg_.at(v2), apex_pt(s), apex_pt(t));
}

std::string Triangulation::face_key() const {
  std::vector<std::array<int, 3>> tris;
  tris.reserve(face_count());
  for (int f = 0; f < face_count(); ++f) {
    std::array<int, 3> v = face_vertices(f);
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (v[i] < v[k]) k = i;
    tris.push_back({v[k], v[(k + 1) % 3], v[(k + 2) % 3]});
  }
  std::sort(tris.begin(), tris.end());
  std::ostringstream os;
  for (const auto& t : tris) os << t[0] << ',' << t[1] << ',' << t[2] << ';';
  return os.str();
}

bool Triangulation::is_delaunay() const {
  for (int f = 0; f < face_count(); ++f) {
    if (face_bounded(f)) {
      const auto v = face_vertices(f);
      for (int d = 0; d < vertex_count(); ++d) {
        if (cfg_.is_infinite(d) || d == v[0] || d == v[1] || d == v[2])
          continue;
        if (incircle(cfg_.at(v[0]), cfg_.at(v[1]), cfg_.at(v[2]),
                     cfg_.at(d)) > 0)
          return false;
      }
    } else {
      int h = face_he_[f];
      int fe = -1;
      for (int i = 0; i < 3; ++i) {
        if (!cfg_.is_infinite(origin(h)) && !cfg_.is_infinite(dest(h)))
          fe = h;
        h = next(h);
      }
      if (fe < 0) continue;  // minimal shell
      const int u = origin(fe), v = dest(fe);
      for (int d = 0; d < vertex_count(); ++d) {
        if (cfg_.is_infinite(d) || d == u || d == v) continue;
        if (orient2d(cfg_.at(u), cfg_.at(v), cfg_.at(d)) > 0) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Triangulation delaunay(const PointConfiguration& cfg) {
  if (!cfg.has_infinite_vertex())
    throw GeomError("delaunay: configurations without an infinite vertex "
                    "are not supported");
  std::vector<int> finite;
  for (int v = 0; v < cfg.size(); ++v)
    if (!cfg.is_infinite(v)) finite.push_back(v);
  if (finite.size() < 2) throw GeomError("delaunay: need at least 3 points");

  Triangulation t;
  t.cfg_ = cfg;
  MeshBuilder mb(t);
  const int p = finite[0], q = finite[1];
  mb.init_shell(p, q, cfg.infinite_vertex());

  // Insert a point off the line (p,q) first so that walks terminate even
  // when later points are collinear with hull edges.
  std::vector<int> rest(finite.begin() + 2, finite.end());
  int pivot = -1;
  for (std::size_t i = 0; i < rest.size(); ++i)
    if (orient2d(cfg.at(p), cfg.at(q), cfg.at(rest[i])) != 0) {
      pivot = static_cast<int>(i);
      break;
    }
  if (pivot < 0 && !rest.empty())
    throw GeomError("delaunay: all finite points are collinear");
  if (pivot >= 0) std::swap(rest[0], rest[pivot]);
  for (int w : rest) mb.insert_delaunay(w);
  mb.canonicalize_ties();
  return t;
}

Triangulation flip(const Triangulation& t, int h) {
  if (h < 0 || h >= t.halfedge_count()) throw GeomError("flip: bad half-edge");
  if (!t.edge_interior(h))
    throw GeomError("flip: edge must lie between two bounded faces");
  const int u = t.origin(h), v = t.dest(h);
  const int a = t.apex_of_he(h), b = t.apex_of_he(t.twin(h));
  const auto& c = t.config();
  if (!(orient2d(c.at(a), c.at(u), c.at(b)) > 0 &&
        orient2d(c.at(b), c.at(v), c.at(a)) > 0))
    throw GeomError("flip: quadrilateral is not strictly convex");
  Triangulation out = t;
  MeshBuilder(out).flip_edge(h);
  return out;
}

int find_flippable(const Triangulation& t, int u, int v) {
  const int h = t.find_halfedge(u, v);
  if (h < 0) throw GeomError("find_flippable: no such edge");
  return h;
}

std::pair<Triangulation, std::vector<FlipRecord>> lawson_restore(
    const Triangulation& t0) {
  Triangulation t = t0;
  MeshBuilder mb(t);
  std::vector<FlipRecord> log;
  std::deque<int> queue;
  for (int h : t.edges()) queue.push_back(h);
  int guard = 0;
  const int guard_max = 1000 * (t.halfedge_count() + 10);
  while (!queue.empty()) {
    if (++guard > guard_max) throw GeomError("lawson: flip loop");
    const int h = queue.front();
    queue.pop_front();
    if (!t.edge_interior(h)) continue;
    const int d = t.apex_of_he(t.twin(h));
    if (!mb.in_circumdisk(h, d)) continue;
    const int u = t.origin(h), v = t.dest(h);
    const int a = t.apex_of_he(h);
    const int h2 = t.twin(h);
    const int h1n = t.next(h), h1p = t.next(h1n);
    const int h2n = t.next(h2), h2p = t.next(h2n);
    mb.flip_edge(h);
    log.push_back(FlipRecord{{u, v}, {a, d}});
    queue.push_back(h1n);
    queue.push_back(h1p);
    queue.push_back(h2n);
    queue.push_back(h2p);
  }
  mb.canonicalize_ties();
  return {t, log};
}

Triangulation insert_in_face(const Triangulation& t, int f, Point z) {
  if (f < 0 || f >= t.face_count() || !t.face_bounded(f))
    throw GeomError("insert_in_face: bounded face required");
  const auto v = t.face_vertices(f);
  const auto& c = t.config();
  for (int i = 0; i < 3; ++i)
    if (orient2d(c.at(v[i]), c.at(v[(i + 1) % 3]), z) <= 0)
      throw GeomError("insert_in_face: point not strictly inside the face");
  std::vector<std::optional<Point>> pts;
  for (int i = 0; i < c.size(); ++i)
    pts.push_back(c.is_infinite(i) ? std::nullopt
                                   : std::optional<Point>(c.at(i)));
  pts.push_back(z);
  PointConfiguration cfg2(std::move(pts), c.gauge());
  Triangulation out = t;
  out.cfg_ = cfg2;
  out.vert_he_.push_back(-1);
  MeshBuilder(out).split_face(f, cfg2.size() - 1);
  return out;
}

int locate(const Triangulation& t, Point z) {
  const auto& c = t.config();
  for (int v = 0; v < c.size(); ++v)
    if (!c.is_infinite(v) && c.at(v) == z)
      throw GeomError("locate: query coincides with a vertex");
  // Walk first; on boundary hits or unbounded results fall back to an
  // exhaustive scan so that ties resolve toward the smallest face id.
  try {
    int on_he = -1;
    const int f = walk_locate(t, z, on_he);
    if (on_he < 0 && t.face_bounded(f)) return f;
  } catch (const GeomError&) {
  }
  for (int f = 0; f < t.face_count(); ++f) {
    if (t.face_bounded(f)) {
      const auto v = t.face_vertices(f);
      bool inside = true;
      for (int i = 0; i < 3 && inside; ++i)
        if (orient2d(c.at(v[i]), c.at(v[(i + 1) % 3]), z) < 0) inside = false;
      if (inside) return f;  // first hit is the smallest id
    } else {
      const int fe = finite_he_of(t, f);
      if (orient2d(c.at(t.origin(fe)), c.at(t.dest(fe)), z) >= 0) return f;
    }
  }
  throw GeomError("locate: no containing face found");
}

std::vector<Triangulation> enumerate_triangulations(
    const PointConfiguration& cfg, int max_vertices) {
  if (cfg.size() > max_vertices)
    throw GeomError("enumerate_triangulations: vertex cap exceeded");
  std::vector<Triangulation> out;
  std::set<std::string> seen;
  std::deque<Triangulation> queue;
  queue.push_back(delaunay(cfg));
  seen.insert(queue.front().face_key());
  while (!queue.empty()) {
    Triangulation t = std::move(queue.front());
    queue.pop_front();
    for (int h : t.edges()) {
      if (!t.edge_interior(h)) continue;
      const int u = t.origin(h), v = t.dest(h);
      const int a = t.apex_of_he(h), b = t.apex_of_he(t.twin(h));
      if (!(orient2d(cfg.at(a), cfg.at(u), cfg.at(b)) > 0 &&
            orient2d(cfg.at(b), cfg.at(v), cfg.at(a)) > 0))
        continue;
      Triangulation t2 = flip(t, h);
      if (seen.insert(t2.face_key()).second) queue.push_back(t2);
    }
    out.push_back(std::move(t));
  }
  return out;
}

double AnglePattern::at(int u, int v) const {
  auto it = theta.find(std::minmax(u, v));
  if (it == theta.end()) throw GeomError("angle_pattern: no such edge");
  return it->second;
}

AnglePattern angle_pattern(const Triangulation& t) {
  AnglePattern p;
  for (int h : t.edges())
    p.theta[std::minmax(t.origin(h), t.dest(h))] = t.edge_theta(h);
  return p;
}

ContourReport check_contour_condition(const Triangulation& t,
                                      const AnglePattern& pattern,
                                      int max_cycle_len) {
  ContourReport report;
  report.min_sum = 4 * kPi;
  const int nf = t.face_count();
  // adjacency as half-edges grouped by face
  std::vector<std::vector<int>> out_he(nf);
  for (int h = 0; h < t.halfedge_count(); ++h)
    out_he[t.face_of(h)].push_back(h);

  std::set<std::string> seen;
  std::vector<int> faces;
  std::vector<int> edge_ids;

  auto canonical = [](std::vector<int> cyc) {
    int k = 0;
    for (std::size_t i = 1; i < cyc.size(); ++i)
      if (cyc[i] < cyc[k]) k = static_cast<int>(i);
    std::vector<int> a, b;
    const int n = static_cast<int>(cyc.size());
    for (int i = 0; i < n; ++i) a.push_back(cyc[(k + i) % n]);
    for (int i = 0; i < n; ++i) b.push_back(cyc[(k - i + n) % n]);
    if (b < a) a = b;
    std::ostringstream os;
    for (int f : a) os << f << ',';
    return os.str();
  };

  auto record = [&](const std::vector<int>& cyc, double sum) {
    const std::string key = canonical(cyc);
    if (!seen.insert(key).second) return;
    ++report.cycles_checked;
    report.min_sum = std::min(report.min_sum, sum);
    if (sum < 2 * kPi - 1e-9) report.violations.push_back({cyc, sum});
  };

  std::vector<bool> edge_used(t.halfedge_count(), false);
  std::vector<bool> face_used(nf, false);

  std::function<void(int, int, double)> dfs = [&](int start, int cur,
                                                  double sum) {
    for (int h : out_he[cur]) {
      const int eid = std::min(h, t.twin(h));
      if (edge_used[eid]) continue;
      const int nxt = t.face_of(t.twin(h));
      const double th = pattern.at(t.origin(h), t.dest(h));
      if (nxt == start && faces.size() >= 2) {
        record(faces, sum + th);
        continue;
      }
      if (face_used[nxt] || nxt < start) continue;
      if (static_cast<int>(faces.size()) >= max_cycle_len) continue;
      face_used[nxt] = true;
      edge_used[eid] = true;
      faces.push_back(nxt);
      dfs(start, nxt, sum + th);
      faces.pop_back();
      edge_used[eid] = false;
      face_used[nxt] = false;
    }
  };

  for (int s = 0; s < nf; ++s) {
    faces = {s};
    face_used[s] = true;
    dfs(s, s, 0.0);
    face_used[s] = false;
  }
  return report;
}

}  // namespace delk
