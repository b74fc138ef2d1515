#include "delk/kahler.hpp"

#include <algorithm>
#include <cmath>

namespace delk {

namespace {
constexpr double kPi = 3.14159265358979323846;

// zeta(2n)/pi^(2n), n = 1..40. Exact rationals for the first three, direct
// summation (rapidly convergent) beyond.
const std::vector<double>& zeta_ratio_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(41, 0.0);
    t[1] = 1.0 / 6.0;
    t[2] = 1.0 / 90.0;
    t[3] = 1.0 / 945.0;
    for (int n = 4; n <= 40; ++n) {
      double z = 0.0;
      for (int k = 256; k >= 1; --k) z += std::pow(double(k), -2.0 * n);
      t[n] = z / std::pow(kPi, 2.0 * n);
    }
    return t;
  }();
  return table;
}
}  // namespace

double lobachevsky(double x) {
  double r = std::remainder(x, kPi);  // (-pi/2, pi/2]
  if (r == 0.0) return 0.0;
  const double s = r < 0 ? -1.0 : 1.0;
  r = std::abs(r);
  // L(r) = r - r log(2r) + sum_n zeta(2n)/(n(2n+1)pi^(2n)) r^(2n+1)
  double acc = r * (1.0 - std::log(2.0 * r));
  const auto& zr = zeta_ratio_table();
  const double r2 = r * r;
  double pw = r;  // r^(2n-1)
  for (int n = 1; n <= 40; ++n) {
    pw *= r2;
    const double term = zr[n] / (n * (2.0 * n + 1.0)) * pw;
    acc += term;
    if (term < 1e-18 * std::max(1.0, std::abs(acc))) break;
  }
  return s * acc;
}

double ideal_tetra_volume(Point a, Point b, Point c) {
  if (a == b || b == c || a == c)
    throw GeomError("ideal_tetra_volume: coincident points");
  if (orient2d(a, b, c) == 0) return 0.0;
  const auto ang = triangle_angles(a, b, c);
  return lobachevsky(ang[0]) + lobachevsky(ang[1]) + lobachevsky(ang[2]);
}

double prepotential(const Triangulation& t) {
  const auto& c = t.config();
  double acc = 0.0;
  for (int f : t.bounded_faces()) {
    const auto v = t.face_vertices(f);
    acc -= ideal_tetra_volume(c.at(v[0]), c.at(v[1]), c.at(v[2]));
  }
  return acc;
}

int KahlerMatrix::index_of(int v) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), v);
  if (it == labels.end() || *it != v)
    throw GeomError("KahlerMatrix: vertex has no row");
  return static_cast<int>(it - labels.begin());
}

KahlerMatrix kahler_matrix(const Triangulation& t) {
  const auto& c = t.config();
  KahlerMatrix m;
  for (int v = 0; v < c.size(); ++v)
    if (!c.is_infinite(v)) m.labels.push_back(v);
  const int n = static_cast<int>(m.labels.size());
  m.mat = CMat(n);
  const Cplx quarter_i = Cplx(0.0, -0.25);  // 1/(4i)

  for (int f : t.bounded_faces()) {
    const auto v = t.face_vertices(f);
    // edge k runs v[k] -> v[k+1]
    const std::array<std::array<int, 2>, 3> edge = {
        {{v[0], v[1]}, {v[1], v[2]}, {v[2], v[0]}}};
    auto coupling = [&](int u, int k) {  // A_{u, edge k}
      const int other = (edge[k][0] == u) ? edge[k][1] : edge[k][0];
      return Cplx(1.0, 0.0) / (c.at(u) - c.at(other));
    };
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (a == b) continue;
        const double sign = (b == (a + 2) % 3) ? 1.0 : -1.0;
        for (int ue : edge[a])
          for (int ve : edge[b]) {
            const Cplx contrib = quarter_i * coupling(ue, a) * sign *
                                 std::conj(coupling(ve, b));
            const int i = m.index_of(ue), j = m.index_of(ve);
            m.mat(i, j) += contrib;
          }
      }
  }
  return m;
}

KahlerMatrix kahler_matrix_fd(const Triangulation& t, double step,
                              bool check_flips) {
  const auto& c = t.config();
  std::vector<int> finite_free;
  for (int v : c.free_ids())
    if (!c.is_infinite(v)) finite_free.push_back(v);
  const int nf = static_cast<int>(finite_free.size());

  std::vector<Point> base(c.size(), Point(0, 0));
  for (int v = 0; v < c.size(); ++v)
    if (!c.is_infinite(v)) base[v] = c.at(v);

  // prepotential with pinned combinatorics
  std::vector<std::array<int, 3>> faces;
  for (int f : t.bounded_faces()) faces.push_back(t.face_vertices(f));
  auto pot = [&](const std::vector<Point>& p) {
    double acc = 0.0;
    for (const auto& fv : faces)
      acc -= ideal_tetra_volume(p[fv[0]], p[fv[1]], p[fv[2]]);
    return acc;
  };

  if (check_flips && delaunay(c).face_key() == t.face_key()) {
    for (int k = 0; k < nf; ++k)
      for (int comp = 0; comp < 2; ++comp)
        for (double sgn : {-1.0, 1.0}) {
          std::vector<std::optional<Point>> pts;
          for (int v = 0; v < c.size(); ++v)
            pts.push_back(c.is_infinite(v) ? std::nullopt
                                           : std::optional<Point>(base[v]));
          Point d = comp == 0 ? Point(sgn * step, 0) : Point(0, sgn * step);
          *pts[finite_free[k]] += d;
          if (delaunay(PointConfiguration(std::move(pts), c.gauge()))
                  .face_key() != t.face_key())
            throw GeomError(
                "kahler_matrix_fd: perturbation crosses a flip; use a "
                "smaller step");
        }
  }

  // real coordinates: (x of finite_free[0], y of finite_free[0], x of ...)
  const int dim = 2 * nf;
  auto pot_at = [&](std::initializer_list<std::pair<int, double>> moves) {
    std::vector<Point> p = base;
    for (auto [coord, delta] : moves) {
      const int v = finite_free[coord / 2];
      if (coord % 2 == 0) p[v] += Point(delta, 0.0);
      else p[v] += Point(0.0, delta);
    }
    return pot(p);
  };

  const double p0 = pot(base);
  std::vector<double> hess(static_cast<std::size_t>(dim) * dim, 0.0);
  auto H = [&](int a, int b) -> double& {
    return hess[static_cast<std::size_t>(a) * dim + b];
  };
  for (int a = 0; a < dim; ++a)
    H(a, a) = (pot_at({{a, step}}) - 2.0 * p0 + pot_at({{a, -step}})) /
              (step * step);
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      const double v =
          (pot_at({{a, step}, {b, step}}) - pot_at({{a, step}, {b, -step}}) -
           pot_at({{a, -step}, {b, step}}) +
           pot_at({{a, -step}, {b, -step}})) /
          (4.0 * step * step);
      H(a, b) = H(b, a) = v;
    }

  KahlerMatrix m;
  m.labels = finite_free;
  m.mat = CMat(nf);
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j) {
      const int xi = 2 * i, yi = 2 * i + 1, xj = 2 * j, yj = 2 * j + 1;
      m.mat(i, j) = 0.25 * Cplx(H(xi, xj) + H(yi, yj), H(xi, yj) - H(yi, xj));
    }
  return m;
}

double det_excluding(const KahlerMatrix& m, const std::vector<int>& exclude) {
  std::vector<int> keep;
  for (std::size_t i = 0; i < m.labels.size(); ++i)
    if (std::find(exclude.begin(), exclude.end(), m.labels[i]) ==
        exclude.end())
      keep.push_back(static_cast<int>(i));
  const int n = static_cast<int>(keep.size());
  CMat sub(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sub(i, j) = m.mat(keep[i], keep[j]);
  const Cplx d = det_lu(std::move(sub));
  return d.real();
}

double normalized_det(const Triangulation& t,
                      const std::array<int, 3>& triple) {
  const auto& c = t.config();
  int n_inf = 0;
  for (int v : triple) n_inf += c.is_infinite(v) ? 1 : 0;
  if (c.has_infinite_vertex() && n_inf == 0)
    throw GeomError(
        "normalized_det: all-finite triples are unsupported when the "
        "configuration has an infinite vertex");
  if (n_inf != 1) throw GeomError("normalized_det: malformed triple");
  const KahlerMatrix m = kahler_matrix(t);
  const double d =
      det_excluding(m, {triple[0], triple[1], triple[2]});
  const Cplx d3 = delta3(c, triple[0], triple[1], triple[2]);
  return d / std::norm(d3);
}

double measure_density(const PointConfiguration& cfg) {
  const Triangulation t = delaunay(cfg);
  const KahlerMatrix m = kahler_matrix(t);
  const auto& g = cfg.gauge();
  const double d = det_excluding(m, {g[0], g[1], g[2]});
  return std::ldexp(d, cfg.free_count());  // 2^N * d
}

FlipDelta flip_delta_predicted(const Triangulation& t, int h) {
  if (!t.edge_interior(h))
    throw GeomError("flip_delta_predicted: interior edge required");
  const auto& c = t.config();
  FlipDelta out;
  out.v2 = t.origin(h);
  out.v4 = t.dest(h);
  out.v1 = t.apex_of_he(h);
  out.v3 = t.apex_of_he(t.twin(h));
  const Point z1 = c.at(out.v1), z2 = c.at(out.v2), z3 = c.at(out.v3),
              z4 = c.at(out.v4);
  const auto cc = circumcircle(z1, z2, z4);
  const Circle& circ = std::get<Circle>(cc);
  const double area = 0.5 * cross(z2 - z1, z4 - z1);
  const double excess = std::norm(z3 - circ.center) - circ.radius * circ.radius;
  const KahlerMatrix m = kahler_matrix(t);
  const double minor = det_excluding(m, {out.v1, out.v2, out.v3, out.v4});
  out.predicted = minor * area * excess /
                  (std::norm(z3 - z1) * std::norm(z3 - z2) * std::norm(z3 - z4));
  return out;
}

double four_point_dzz(Point a, Point b, Point c, Point z) {
  auto term = [&](Point p, Point q) {
    return 0.5 * (Cplx(1.0, 0.0) / ((z - p) * std::conj(z - q))).imag();
  };
  return term(a, b) + term(b, c) + term(c, a);
}

}  // namespace delk
