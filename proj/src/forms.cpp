#include "delk/forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace delk {

namespace {

constexpr double kPi = 3.14159265358979323846;

using CVec = std::vector<Cplx>;

// d log(z_k - z_j) and its conjugate as complex covectors on the basis.
CVec dlog(const FreeBasis& basis, const PointConfiguration& cfg, int j, int k,
          bool conjugated) {
  CVec out(basis.dim(), Cplx(0.0, 0.0));
  const Cplx w = cfg.at(k) - cfg.at(j);
  const Cplx inv = conjugated ? Cplx(1.0, 0.0) / std::conj(w)
                              : Cplx(1.0, 0.0) / w;
  const Cplx iy = conjugated ? Cplx(0.0, -1.0) : Cplx(0.0, 1.0);
  if (int xk = basis.coord(k, 0); xk >= 0) {
    out[xk] += inv;
    out[xk + 1] += iy * inv;
  }
  if (int xj = basis.coord(j, 0); xj >= 0) {
    out[xj] -= inv;
    out[xj + 1] -= iy * inv;
  }
  return out;
}

// gradient of log|z_k - z_j| as a real covector.
std::vector<double> grad_loglen(const FreeBasis& basis,
                                const PointConfiguration& cfg, int j, int k) {
  std::vector<double> out(basis.dim(), 0.0);
  const Cplx w = cfg.at(k) - cfg.at(j);
  const double n2 = std::norm(w);
  if (int xk = basis.coord(k, 0); xk >= 0) {
    out[xk] += w.real() / n2;
    out[xk + 1] += w.imag() / n2;
  }
  if (int xj = basis.coord(j, 0); xj >= 0) {
    out[xj] -= w.real() / n2;
    out[xj + 1] -= w.imag() / n2;
  }
  return out;
}

void add_wedge(std::vector<Cplx>& acc, int dim, const CVec& u, const CVec& v,
               Cplx coef) {
  for (int a = 0; a < dim; ++a) {
    if (u[a] == Cplx(0.0) && v[a] == Cplx(0.0)) continue;
    for (int b = 0; b < dim; ++b)
      acc[static_cast<std::size_t>(a) * dim + b] +=
          coef * (u[a] * v[b] - u[b] * v[a]) * 0.5;
  }
}

TwoForm realize(const std::vector<Cplx>& acc, int dim) {
  TwoForm out(dim);
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      const Cplx v = acc[static_cast<std::size_t>(a) * dim + b] -
                     acc[static_cast<std::size_t>(b) * dim + a];
      out.add(a, b, v.real());
    }
  return out;
}

void add_real_wedge(TwoForm& out, const std::vector<double>& u,
                    const std::vector<double>& v, double coef) {
  const int dim = out.dim();
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      out.add(a, b, coef * (u[a] * v[b] - u[b] * v[a]));
}

// Circumcircle intersection angle of the edge at h from explicit vertex
// positions (combinatorics from t, geometry from pos).
double theta_of_edge(const Triangulation& t, int h,
                     const std::vector<Point>& pos) {
  const auto& c = t.config();
  const int v1 = t.origin(h), v2 = t.dest(h);
  const int s = t.apex_of_he(h), tt = t.apex_of_he(t.twin(h));
  const bool i1 = c.is_infinite(v1), i2 = c.is_infinite(v2);
  if (i1 || i2) {
    const Point w = pos[i1 ? v2 : v1];
    const Cplx r = i1 ? (w - pos[s]) / (w - pos[tt])
                      : (w - pos[tt]) / (w - pos[s]);
    return wrap_pi(kPi - std::arg(r));
  }
  const bool is_ = c.is_infinite(s), it_ = c.is_infinite(tt);
  Cplx num(1.0, 0.0), den(1.0, 0.0);
  if (!is_) {
    num *= pos[v2] - pos[s];
    den *= pos[v1] - pos[s];
  }
  if (!it_) {
    num *= pos[v1] - pos[tt];
    den *= pos[v2] - pos[tt];
  }
  if (is_ && it_) return kPi;
  return wrap_pi(kPi - std::arg(num / den));
}

std::vector<Point> positions_of(const PointConfiguration& cfg) {
  std::vector<Point> pos(cfg.size(), Point(0.0, 0.0));
  for (int v = 0; v < cfg.size(); ++v)
    if (!cfg.is_infinite(v)) pos[v] = cfg.at(v);
  return pos;
}

// Central-difference gradient of a position functional over the basis.
std::vector<double> fd_gradient(const FreeBasis& basis,
                                const PointConfiguration& cfg, double step,
                                const std::function<double(
                                    const std::vector<Point>&)>& fn,
                                bool angular = false) {
  std::vector<double> out(basis.dim(), 0.0);
  std::vector<Point> pos = positions_of(cfg);
  for (std::size_t i = 0; i < basis.free.size(); ++i) {
    const int v = basis.free[i];
    for (int comp = 0; comp < 2; ++comp) {
      const Point d = comp == 0 ? Point(step, 0.0) : Point(0.0, step);
      pos[v] += d;
      const double fp = fn(pos);
      pos[v] -= 2.0 * d;
      const double fm = fn(pos);
      pos[v] += d;
      const double diff = angular ? wrap_pi(fp - fm) : fp - fm;
      out[2 * i + comp] = diff / (2.0 * step);
    }
  }
  return out;
}

}  // namespace

FreeBasis FreeBasis::of(const PointConfiguration& cfg) {
  FreeBasis b;
  for (int v = 0; v < cfg.size(); ++v)
    if (!cfg.is_gauge(v) && !cfg.is_infinite(v)) b.free.push_back(v);
  return b;
}

int FreeBasis::coord(int v, int c) const {
  auto it = std::lower_bound(free.begin(), free.end(), v);
  if (it == free.end() || *it != v) return -1;
  return 2 * static_cast<int>(it - free.begin()) + c;
}

double TwoForm::eval(const TangentVector& s, const TangentVector& t) const {
  double acc = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) acc += s.comp[i] * (*this)(i, j) * t.comp[j];
  return acc;
}

TwoForm& TwoForm::operator+=(const TwoForm& o) {
  if (dim_ != o.dim_) throw GeomError("TwoForm: dimension mismatch");
  for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += o.m_[i];
  return *this;
}

double OneForm::eval(const TangentVector& t) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < comp.size(); ++i) acc += comp[i] * t.comp[i];
  return acc;
}

Decoration Decoration::constant(const PointConfiguration& cfg, double r) {
  Decoration d;
  for (int v = 0; v < cfg.size(); ++v)
    if (!cfg.is_infinite(v)) d.radius[v] = r;
  return d;
}

double Decoration::at(int v) const {
  auto it = radius.find(v);
  if (it == radius.end() || it->second <= 0.0)
    throw GeomError("decoration: missing or non-positive radius");
  return it->second;
}

TwoForm omega_face_z(const FreeBasis& basis, const PointConfiguration& cfg,
                     const std::array<int, 3>& face) {
  const int dim = basis.dim();
  for (int i = 0; i < 3; ++i)
    if (cfg.at(face[i]) == cfg.at(face[(i + 1) % 3]))
      throw GeomError("omega_face_z: degenerate face");
  std::vector<Cplx> acc(static_cast<std::size_t>(dim) * dim, Cplx(0.0));
  const int v1 = face[0], v2 = face[1], v3 = face[2];
  auto dl = [&](int j, int k, bool b) { return dlog(basis, cfg, j, k, b); };
  // - 1/8 [ dlog z23 ^ dlog zb31 + dlog zb23 ^ dlog z31 + cyclic ],
  // oriented so the face sum has Pfaffian det D.
  const Cplx c(-1.0 / 8.0, 0.0);
  add_wedge(acc, dim, dl(v2, v3, false), dl(v3, v1, true), c);
  add_wedge(acc, dim, dl(v2, v3, true), dl(v3, v1, false), c);
  add_wedge(acc, dim, dl(v3, v1, false), dl(v1, v2, true), c);
  add_wedge(acc, dim, dl(v3, v1, true), dl(v1, v2, false), c);
  add_wedge(acc, dim, dl(v1, v2, false), dl(v2, v3, true), c);
  add_wedge(acc, dim, dl(v1, v2, true), dl(v2, v3, false), c);
  return realize(acc, dim);
}

TwoForm omega_face_lengths(const FreeBasis& basis,
                           const PointConfiguration& cfg,
                           const std::array<int, 3>& face) {
  const int dim = basis.dim();
  for (int i = 0; i < 3; ++i)
    if (cfg.at(face[i]) == cfg.at(face[(i + 1) % 3]))
      throw GeomError("omega_face_lengths: degenerate face");
  TwoForm out(dim);
  const auto g12 = grad_loglen(basis, cfg, face[0], face[1]);
  const auto g23 = grad_loglen(basis, cfg, face[1], face[2]);
  const auto g31 = grad_loglen(basis, cfg, face[2], face[0]);
  add_real_wedge(out, g12, g23, -0.5);
  add_real_wedge(out, g23, g31, -0.5);
  add_real_wedge(out, g31, g12, -0.5);
  return out;
}

TwoForm omega_total(const Triangulation& t) {
  const auto& cfg = t.config();
  const FreeBasis basis = FreeBasis::of(cfg);
  TwoForm out(basis.dim());
  for (int f : t.bounded_faces())
    out += omega_face_z(basis, cfg, t.face_vertices(f));
  return out;
}

double top_coefficient(const TwoForm& omega, int npairs) {
  if (omega.dim() != 2 * npairs)
    throw GeomError("top_coefficient: dimension mismatch");
  std::vector<double> buf = omega.raw();
  return pfaffian_inplace(buf, omega.dim());
}

double lambda_length(Point zi, Point zj, double ri, double rj) {
  if (ri <= 0.0 || rj <= 0.0)
    throw GeomError("lambda_length: radii must be positive");
  return std::abs(zi - zj) / std::sqrt(4.0 * ri * rj);
}

TwoForm wp_form(const Triangulation& t, const Decoration& dec) {
  const auto& cfg = t.config();
  const FreeBasis basis = FreeBasis::of(cfg);
  TwoForm out(basis.dim());
  for (int f : t.bounded_faces()) {
    const auto v = t.face_vertices(f);
    for (int i = 0; i < 3; ++i) dec.at(v[i]);  // validate decoration
    // d log Lambda_ij = d log|z_ij| at fixed decoration
    const auto g12 = grad_loglen(basis, cfg, v[0], v[1]);
    const auto g23 = grad_loglen(basis, cfg, v[1], v[2]);
    const auto g31 = grad_loglen(basis, cfg, v[2], v[0]);
    add_real_wedge(out, g12, g23, -1.0);
    add_real_wedge(out, g23, g31, -1.0);
    add_real_wedge(out, g31, g12, -1.0);
  }
  return out;
}

TwoForm chern_form_vertex(const Triangulation& t, int v, double step,
                          bool allow_hull, int anchor_offset) {
  const auto& cfg = t.config();
  if (!t.vertex_interior(v) && !allow_hull)
    throw GeomError("chern_form_vertex: hull vertex");
  const FreeBasis basis = FreeBasis::of(cfg);
  std::vector<int> star = t.vertex_star(v);
  // start the ccw labelling at the smallest far endpoint
  std::size_t k = 0;
  for (std::size_t i = 1; i < star.size(); ++i)
    if (t.dest(star[i]) < t.dest(star[k])) k = i;
  k = (k + anchor_offset) % star.size();
  std::rotate(star.begin(), star.begin() + k, star.end());

  std::vector<std::vector<double>> dtheta;
  for (int h : star)
    dtheta.push_back(fd_gradient(
        basis, cfg, step,
        [&](const std::vector<Point>& pos) { return theta_of_edge(t, h, pos); },
        true));
  TwoForm out(basis.dim());
  const double norm = 1.0 / ((2 * kPi) * (2 * kPi));
  for (std::size_t e = 0; e < star.size(); ++e)
    for (std::size_t ep = 0; ep < e; ++ep)
      add_real_wedge(out, dtheta[e], dtheta[ep], norm);
  return out;
}

OneForm connection_form_vertex(const Triangulation& t, int v,
                               double reference_angle, double step) {
  const auto& cfg = t.config();
  if (!t.vertex_interior(v))
    throw GeomError("connection_form_vertex: hull vertex");
  const FreeBasis basis = FreeBasis::of(cfg);
  OneForm out;
  out.comp.assign(basis.dim(), 0.0);
  for (int h : t.vertex_star(v)) {
    const int f = t.face_of(h);
    const auto fv = t.face_vertices(f);
    const double theta_plus = t.edge_theta(h);  // f_+ = ccw-first edge at v
    auto gamma = [&](const std::vector<Point>& pos) {
      const auto cc = circumcircle(pos[fv[0]], pos[fv[1]], pos[fv[2]]);
      const Point w = std::get<Circle>(cc).center;
      return wrap_pi(std::arg(w - pos[v]) - reference_angle);
    };
    const auto dgamma = fd_gradient(basis, cfg, step, gamma, true);
    const double norm = theta_plus / ((2 * kPi) * (2 * kPi));
    for (int i = 0; i < basis.dim(); ++i) out.comp[i] += norm * dgamma[i];
  }
  return out;
}

FlipDiscontinuity flip_discontinuity(const PointConfiguration& cfg, int u,
                                     int v, double step) {
  const Triangulation t = delaunay(cfg);
  const int h = t.find_halfedge(u, v);
  if (h < 0 || !t.edge_interior(h))
    throw GeomError("flip_discontinuity: no interior edge between u and v");
  if (std::abs(t.edge_theta(h)) > 1e-4)
    throw GeomError("flip_discontinuity: configuration too far from the "
                    "cocyclic locus");
  FlipDiscontinuity out;
  const int v2 = t.origin(h), v4 = t.dest(h);
  const int v1 = t.apex_of_he(h), v3 = t.apex_of_he(t.twin(h));
  out.labels = {v1, v2, v3, v4};
  const Triangulation t2 = flip(t, h);
  for (int w : out.labels)
    if (!t.vertex_interior(w) || !t2.vertex_interior(w))
      throw GeomError("flip_discontinuity: quad vertices must be interior");

  const FreeBasis basis = FreeBasis::of(cfg);
  OneForm lhs;
  lhs.comp.assign(basis.dim(), 0.0);
  for (int w : out.labels) {
    const OneForm a = connection_form_vertex(t, w, 0.0, step);
    const OneForm b = connection_form_vertex(t2, w, 0.0, step);
    for (int i = 0; i < basis.dim(); ++i) lhs.comp[i] += a.comp[i] - b.comp[i];
  }
  out.lhs = lhs;

  auto theta_grad = [&](const Triangulation& tt, int a, int b) {
    const int hh = tt.find_halfedge(a, b);
    return fd_gradient(
        basis, cfg, step,
        [&](const std::vector<Point>& pos) {
          return theta_of_edge(tt, hh, pos);
        },
        true);
  };
  auto theta_val = [&](const Triangulation& tt, int a, int b) {
    return tt.edge_theta(tt.find_halfedge(a, b));
  };
  const double th12 = theta_val(t, v1, v2), th14 = theta_val(t, v1, v4);
  const double th23 = theta_val(t, v2, v3), th34 = theta_val(t, v3, v4);
  const auto d12 = theta_grad(t, v1, v2);
  const auto d12p = theta_grad(t2, v1, v2);
  const auto d24 = theta_grad(t, v2, v4);

  const double cA = th14 + th23 - th12 - th34;
  const double cB = th14 + th23;
  const double norm = 1.0 / ((2 * kPi) * (2 * kPi));
  double best = std::numeric_limits<double>::infinity();
  for (int sg : {1, -1})
    for (int sd : {1, -1}) {
      OneForm rhs;
      rhs.comp.assign(basis.dim(), 0.0);
      for (int i = 0; i < basis.dim(); ++i)
        rhs.comp[i] = sg * norm *
                      (cA * (d12[i] - d12p[i]) + sd * cB * d24[i]);
      double num = 0.0, den = 0.0;
      for (int i = 0; i < basis.dim(); ++i) {
        num += (lhs.comp[i] - rhs.comp[i]) * (lhs.comp[i] - rhs.comp[i]);
        den += lhs.comp[i] * lhs.comp[i];
      }
      const double rel = std::sqrt(num / std::max(den, 1e-300));
      if (rel < best) {
        best = rel;
        out.rhs = rhs;
        out.sign_global = sg;
        out.sign_diag = sd;
      }
    }
  out.rel_error = best;
  return out;
}

}  // namespace delk
