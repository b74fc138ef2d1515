#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "delk/forms.hpp"

using namespace delk;

namespace {
constexpr double kPi = 3.14159265358979323846;

PointConfiguration random_cfg(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.3, 2.3);
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < n) {
    const Point z(u(rng), u(rng));
    bool ok = std::abs(z) > 0.06 && std::abs(z - Point(1, 0)) > 0.06;
    for (const Point& p : pts) ok = ok && std::abs(z - p) > 0.06;
    if (ok) pts.push_back(z);
  }
  return PointConfiguration::standard(pts);
}

TangentVector random_tangent(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  TangentVector t;
  for (int i = 0; i < dim; ++i) t.comp.push_back(u(rng));
  return t;
}

double form_max_diff(const TwoForm& a, const TwoForm& b, double factor = 1.0) {
  double d = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      d = std::max(d, std::abs(a(i, j) - factor * b(i, j)));
  return d;
}
}  // namespace

TEST_CASE("two-form storage is exactly antisymmetric") {
  TwoForm f(4);
  f.add(0, 2, 1.5);
  f.add(1, 3, -0.25);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(f(i, j) == -f(j, i));
  TangentVector s{{1, 0, 2, 0}}, t{{0, 1, 3, 0}};
  // only the (0,2) pair contributes: 1.5 * (s0 t2 - s2 t0) = 4.5
  CHECK(f.eval(s, t) == doctest::Approx(4.5));
  CHECK(f.eval(s, t) == -f.eval(t, s));
}

TEST_CASE("omega_face_z matches a finite-difference wedge oracle") {
  const auto cfg = random_cfg(3, 62);
  const auto t = delaunay(cfg);
  const FreeBasis basis = FreeBasis::of(cfg);
  std::mt19937_64 rng(4);
  for (int f : t.bounded_faces()) {
    const auto fv = t.face_vertices(f);
    const TwoForm om = omega_face_z(basis, cfg, fv);
    // FD oracle on the complex log differentials
    auto positions = [&](const TangentVector& tv, double h) {
      std::vector<Point> pos(cfg.size(), Point(0, 0));
      for (int v = 0; v < cfg.size(); ++v)
        if (!cfg.is_infinite(v)) pos[v] = cfg.at(v);
      for (std::size_t i = 0; i < basis.free.size(); ++i)
        pos[basis.free[i]] +=
            h * Point(tv.comp[2 * i], tv.comp[2 * i + 1]);
      return pos;
    };
    auto dlog_fd = [&](const TangentVector& tv, int j, int k, bool conj) {
      const double h = 1e-6;
      auto lg = [&](double hh) {
        const auto p = positions(tv, hh);
        const Cplx w = p[k] - p[j];
        return conj ? std::log(std::conj(w)) : std::log(w);
      };
      return (lg(h) - lg(-h)) / (2 * h);
    };
    for (int rep = 0; rep < 3; ++rep) {
      const TangentVector t1 = random_tangent(basis.dim(), rng);
      const TangentVector t2 = random_tangent(basis.dim(), rng);
      auto wedge = [&](int j, int k, bool cj, int j2, int k2, bool cj2) {
        return dlog_fd(t1, j, k, cj) * dlog_fd(t2, j2, k2, cj2) -
               dlog_fd(t2, j, k, cj) * dlog_fd(t1, j2, k2, cj2);
      };
      const int v1 = fv[0], v2 = fv[1], v3 = fv[2];
      Cplx acc = wedge(v2, v3, false, v3, v1, true) +
                 wedge(v2, v3, true, v3, v1, false) +
                 wedge(v3, v1, false, v1, v2, true) +
                 wedge(v3, v1, true, v1, v2, false) +
                 wedge(v1, v2, false, v2, v3, true) +
                 wedge(v1, v2, true, v2, v3, false);
      const double oracle = -acc.real() / 8.0;
      CHECK(om.eval(t1, t2) == doctest::Approx(oracle).epsilon(1e-6));
    }
    // cyclic relabeling leaves the form unchanged
    const TwoForm om2 =
        omega_face_z(basis, cfg, {fv[1], fv[2], fv[0]});
    CHECK(form_max_diff(om, om2) < 1e-14);
  }
}

TEST_CASE("omega_face_z equals omega_face_lengths") {
  const auto cfg = random_cfg(4, 63);
  const auto t = delaunay(cfg);
  const FreeBasis basis = FreeBasis::of(cfg);
  for (int f : t.bounded_faces()) {
    const auto fv = t.face_vertices(f);
    const TwoForm a = omega_face_z(basis, cfg, fv);
    const TwoForm b = omega_face_lengths(basis, cfg, fv);
    double scale = 1e-30;
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j)
        scale = std::max(scale, std::abs(b(i, j)));
    CHECK(form_max_diff(a, b) / scale < 1e-9);
  }
}

TEST_CASE("omega_total evaluates like the kahler metric") {
  const auto cfg = random_cfg(4, 64);
  const auto t = delaunay(cfg);
  const TwoForm om = omega_total(t);
  const KahlerMatrix d = kahler_matrix(t);
  const FreeBasis basis = FreeBasis::of(cfg);
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    const TangentVector t1 = random_tangent(basis.dim(), rng);
    const TangentVector t2 = random_tangent(basis.dim(), rng);
    // (i/2) sum D_uv dz_u ^ dzbar_v on the same pair
    Cplx acc(0, 0);
    for (std::size_t a = 0; a < basis.free.size(); ++a)
      for (std::size_t b = 0; b < basis.free.size(); ++b) {
        const Cplx duv = d.mat(d.index_of(basis.free[a]),
                               d.index_of(basis.free[b]));
        const Cplx dz1(t1.comp[2 * a], t1.comp[2 * a + 1]);
        const Cplx dz2(t2.comp[2 * a], t2.comp[2 * a + 1]);
        const Cplx dzb1 = std::conj(Cplx(t1.comp[2 * b], t1.comp[2 * b + 1]));
        const Cplx dzb2 = std::conj(Cplx(t2.comp[2 * b], t2.comp[2 * b + 1]));
        acc += Cplx(0, 0.5) * duv * (dz1 * dzb2 - dz2 * dzb1);
      }
    CHECK(std::abs(acc.imag()) < 1e-10);
    CHECK(om.eval(t1, t2) == doctest::Approx(acc.real()).epsilon(1e-9));
  }
}

TEST_CASE("omega is continuous across a flip") {
  // nearly cocyclic square: compare the total form on both triangulations
  const auto cfg = PointConfiguration::standard(
      {Point(1.0, 1.0 + 1e-9), Point(0, 1)});
  const auto t = delaunay(cfg);
  int h = -1;
  for (int e : t.edges())
    if (t.edge_interior(e)) h = e;
  REQUIRE(h >= 0);
  const auto t2 = flip(t, h);
  CHECK(form_max_diff(omega_total(t), omega_total(t2)) < 1e-7);
}

TEST_CASE("top coefficient") {
  TwoForm f(2);
  f.add(0, 1, 0.75);
  CHECK(top_coefficient(f, 1) == doctest::Approx(0.75));
  // pfaffian squared equals the determinant
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 6;
    TwoForm g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.add(i, j, u(rng));
    CMat m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = g(i, j);
    const double pf = top_coefficient(g, n / 2);
    const double det = det_lu(m).real();
    CHECK(pf * pf == doctest::Approx(det).epsilon(1e-10));
  }
  CHECK_THROWS_AS(top_coefficient(f, 2), GeomError);
}

TEST_CASE("pfaffian coefficient equals det D") {
  for (int n : {1, 2, 4}) {
    const auto cfg = random_cfg(n, 800 + n);
    const auto t = delaunay(cfg);
    const auto& g = cfg.gauge();
    const double det =
        det_excluding(kahler_matrix(t), {g[0], g[1], g[2]});
    CHECK(top_coefficient(omega_total(t), n) ==
          doctest::Approx(det).epsilon(1e-8));
  }
}

TEST_CASE("lambda lengths and Ptolemy") {
  // sqrt(4 R_i R_j) = 2R at equal radii, so R = 1/2 gives the bare distance
  CHECK(lambda_length(Point(0, 0), Point(2, 1), 0.5, 0.5) ==
        doctest::Approx(std::abs(Point(2, 1))));
  // scaling both radii by s scales Lambda by 1/s
  CHECK(lambda_length(Point(0, 0), Point(2, 1), 1.5, 1.5) ==
        doctest::Approx(std::abs(Point(2, 1)) / 3.0));
  CHECK_THROWS_AS(lambda_length(Point(0, 0), Point(1, 0), -1.0, 1.0),
                  GeomError);
  // unit square with R = 1/2 everywhere: L13 L24 = 2 = L12 L34 + L14 L23
  const Point z1(0, 0), z2(1, 0), z3(1, 1), z4(0, 1);
  auto L = [&](Point a, Point b) { return lambda_length(a, b, 0.5, 0.5); };
  CHECK(L(z1, z3) * L(z2, z4) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(L(z1, z3) * L(z2, z4) - L(z1, z2) * L(z3, z4) -
                 L(z1, z4) * L(z2, z3)) < 1e-12);
  // the Ptolemy residual vanishes for any positive decoration
  auto L2 = [&](Point a, Point b, double ra, double rb) {
    return lambda_length(a, b, ra, rb);
  };
  const double r1 = 0.3, r2 = 1.1, r3 = 0.7, r4 = 2.2;
  CHECK(std::abs(L2(z1, z3, r1, r3) * L2(z2, z4, r2, r4) -
                 L2(z1, z2, r1, r2) * L2(z3, z4, r3, r4) -
                 L2(z1, z4, r1, r4) * L2(z2, z3, r2, r3)) < 1e-12);
}

TEST_CASE("weil-petersson form") {
  const auto cfg = random_cfg(3, 65);
  const auto t = delaunay(cfg);
  const TwoForm om = omega_total(t);
  const TwoForm wp1 = wp_form(t, Decoration::constant(cfg, 0.25));
  const TwoForm wp2 = wp_form(t, Decoration::constant(cfg, 2.0));
  CHECK(form_max_diff(wp1, wp2) == 0.0);  // decoration independence, exact
  double scale = 1e-30;
  for (int i = 0; i < om.dim(); ++i)
    for (int j = 0; j < om.dim(); ++j)
      scale = std::max(scale, 2 * std::abs(om(i, j)));
  CHECK(form_max_diff(wp1, om, 2.0) / scale < 1e-9);
  // invalid decoration
  Decoration bad;
  CHECK_THROWS_AS(wp_form(t, bad), GeomError);
}

TEST_CASE("chern form at an interior vertex") {
  // a vertex surrounded by a ring is interior
  std::vector<Point> pts = {Point(0.5, 0.3)};
  for (int i = 0; i < 6; ++i)
    pts.push_back(Point(0.5, 0.3) +
                  2.0 * Point(std::cos(i * kPi / 3 + 0.2),
                              std::sin(i * kPi / 3 + 0.2)));
  const auto cfg = PointConfiguration::standard(pts);
  const auto t = delaunay(cfg);
  REQUIRE(t.vertex_interior(3));
  const TwoForm psi = chern_form_vertex(t, 3);
  for (int i = 0; i < psi.dim(); ++i)
    for (int j = 0; j < psi.dim(); ++j) CHECK(psi(i, j) == -psi(j, i));
  // hull vertices are rejected
  CHECK_THROWS_AS(chern_form_vertex(t, 4), GeomError);
  // label-rotation dependence is measured, not assumed away
  const TwoForm psi2 = chern_form_vertex(t, 3);
  CHECK(form_max_diff(psi, psi2) == 0.0);  // deterministic labelling
}

TEST_CASE("connection form translation invariance") {
  std::vector<Point> pts = {Point(0.5, 0.3)};
  for (int i = 0; i < 6; ++i)
    pts.push_back(Point(0.5, 0.3) +
                  2.0 * Point(std::cos(i * kPi / 3 + 0.2),
                              std::sin(i * kPi / 3 + 0.2)));
  const auto cfg = PointConfiguration::standard(pts);
  const auto t = delaunay(cfg);
  const OneForm u1 = connection_form_vertex(t, 3, 0.0);
  // reference direction does not enter the gradients
  const OneForm u2 = connection_form_vertex(t, 3, 1.1);
  for (std::size_t i = 0; i < u1.comp.size(); ++i)
    CHECK(u1.comp[i] == doctest::Approx(u2.comp[i]).epsilon(1e-9));
  // translating the whole configuration leaves the coefficients unchanged
  const Point shift(0.37, -0.21);
  std::vector<std::optional<Point>> moved;
  for (int v = 0; v < cfg.size(); ++v)
    moved.push_back(cfg.is_infinite(v)
                        ? std::nullopt
                        : std::optional<Point>(cfg.at(v) + shift));
  const PointConfiguration cfg2(std::move(moved), cfg.gauge());
  const auto t2 = delaunay(cfg2);
  REQUIRE(t2.face_key() == t.face_key());
  const OneForm u3 = connection_form_vertex(t2, 3, 0.0);
  for (std::size_t i = 0; i < u1.comp.size(); ++i)
    CHECK(u1.comp[i] == doctest::Approx(u3.comp[i]).epsilon(1e-6));
}

TEST_CASE("flip discontinuity check runs and reports a convention") {
  std::vector<Point> pts;
  const Point qc(0.5, 0.15);
  const std::array<double, 4> qa = {0.4, 1.8, 3.4, 5.1};
  for (int i = 0; i < 4; ++i)
    pts.push_back(qc + 0.45 * (i == 0 ? 1.0 + 1e-7 : 1.0) *
                           Point(std::cos(qa[i]), std::sin(qa[i])));
  for (int i = 0; i < 6; ++i) {
    const double a = 0.35 + i * kPi / 3.0;
    pts.push_back(qc + 2.6 * Point(std::cos(a), std::sin(a)));
  }
  const auto cfg = PointConfiguration::standard(pts);
  const auto t = delaunay(cfg);
  int uu = -1, vv = -1;
  double best = 1e9;
  for (int h : t.edges()) {
    if (!t.edge_interior(h)) continue;
    const int u2 = t.origin(h), v2 = t.dest(h);
    if (u2 < 3 || u2 > 6 || v2 < 3 || v2 > 6) continue;
    const double th = std::abs(t.edge_theta(h));
    if (th < best) {
      best = th;
      uu = u2;
      vv = v2;
    }
  }
  REQUIRE(uu >= 0);
  const FlipDiscontinuity fd = flip_discontinuity(cfg, uu, vv);
  // the jump is genuinely nonzero and the closed form matches it
  double norm = 0;
  for (double x : fd.lhs.comp) norm += x * x;
  CHECK(norm > 0);
  CHECK(fd.rel_error < 1e-4);
  // far from cocyclic: rejected
  const auto far_cfg = random_cfg(5, 99);
  const auto tf = delaunay(far_cfg);
  int hh = -1;
  double worst = -1;
  for (int h : tf.edges())
    if (tf.edge_interior(h) && tf.edge_theta(h) > worst) {
      worst = tf.edge_theta(h);
      hh = h;
    }
  if (hh >= 0 && worst > 1e-3)
    CHECK_THROWS_AS(
        flip_discontinuity(far_cfg, tf.origin(hh), tf.dest(hh)), GeomError);
}
