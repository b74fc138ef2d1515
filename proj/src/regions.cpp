#include "delk/regions.hpp"

#include <chrono>
#include <cmath>
#include <functional>

namespace delk {

namespace {
constexpr double kPi = 3.14159265358979323846;

Circle circumcircle_of(Point a, Point b, Point c) {
  const auto g = circumcircle(a, b, c);
  if (is_line(g)) throw GeomError("degenerate face has no circumcircle");
  return std::get<Circle>(g);
}

// Circle of the pencil through p, q whose tangent line at p makes the
// angle tau (mod pi) with the chord direction; tau == 0 gives the line.
GeneralizedCircle pencil_member(Point p, Point q, double tau) {
  const Cplx d = q - p;
  const double len = std::abs(d);
  const Cplx unit = d / len;
  const double s = std::sin(tau);
  if (std::abs(s) < 1e-13) return Line{p, unit};
  const double offset = -(len / 2.0) / std::tan(tau);
  const Point m = p + 0.5 * d;
  const Point center = m + Cplx(0.0, 1.0) * unit * offset;
  const double radius = (len / 2.0) / std::abs(s);
  return Circle{center, radius};
}

double batch_stderr(const std::vector<double>& means) {
  const int b = static_cast<int>(means.size());
  if (b < 2) return 0.0;
  double m = 0.0;
  for (double x : means) m += x;
  m /= b;
  double s2 = 0.0;
  for (double x : means) s2 += (x - m) * (x - m);
  return std::sqrt(s2 / (b - 1) / b);
}

// MC integral of the four-point density over the member set, sampled
// uniformly from a disk.
McEstimate disk_mc(Point a, Point b, Point c, Point center, double radius,
                   const std::function<bool(Point)>& member,
                   long long n_samples, std::uint64_t seed, int n_batches) {
  const auto t0 = std::chrono::steady_clock::now();
  McEstimate est;
  est.seed = seed;
  if (n_batches > n_samples) n_batches = static_cast<int>(n_samples);
  const long long per_batch = n_samples / n_batches;
  const double area = kPi * radius * radius;
  const std::vector<double> means = run_batches(n_batches, [&](int k) {
    Rng rng({seed, static_cast<std::uint64_t>(k)});
    double acc = 0.0;
    for (long long i = 0; i < per_batch; ++i) {
      const double r = radius * std::sqrt(rng.uniform());
      const double phi = 2.0 * kPi * rng.uniform();
      const Point z = center + Point(r * std::cos(phi), r * std::sin(phi));
      if (!member(z)) continue;
      acc += four_point_dzz(a, b, c, z) * area;
    }
    return acc / per_batch;
  });
  est.n = per_batch * n_batches;
  double m = 0.0;
  for (double x : means) m += x;
  est.mean = m / means.size();
  est.stderr_ = batch_stderr(means);
  est.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return est;
}

}  // namespace

GeneralizedCircle orthogonal_arc(const Circle& circ, Point p, Point q) {
  const Point m = p + 0.5 * (q - p);
  const Cplx off = m - circ.center;
  const double h = std::abs(off);
  if (h < 1e-14 * circ.radius) return line_through(p, q);
  const Cplx u = off / h;
  const Point center = circ.center + (circ.radius * circ.radius / h) * u;
  const double r2 = std::norm(center - circ.center) - circ.radius * circ.radius;
  return Circle{center, std::sqrt(r2)};
}

GeneralizedCircle bisector_arc(const Triangulation& t, int h) {
  const auto& c = t.config();
  if (!t.face_bounded(t.face_of(h))) h = t.twin(h);
  if (!t.face_bounded(t.face_of(h)))
    throw GeomError("bisector_arc: edge has no bounded side");
  const Point p = c.at(t.origin(h)), q = c.at(t.dest(h));
  const int s = t.apex_of_he(h);
  const int tw = t.apex_of_he(t.twin(h));
  // tangent-line pencil parameter at p, chord directed p -> q with the
  // bounded face on the left: tau_f = pi - alpha_f, tau_f' = alpha_f',
  // bisector at (alpha_f' - alpha_f)/2.
  const double alpha_f =
      triangle_angles(c.at(s), p, q)[0];
  double alpha_fp = 0.0;
  if (!c.is_infinite(tw)) alpha_fp = triangle_angles(c.at(tw), p, q)[0];
  return pencil_member(p, q, wrap_pi((alpha_fp - alpha_f) / 2.0));
}

bool in_region_B(Point a, Point b, Point c, Point z) {
  // The ideal triangle on (a,b,c) in the Poincare model of the circumdisk:
  // every angle coordinate strictly between 0 and pi/2. For acute faces
  // this coincides with "inside the circumdisk and outside the three
  // orthogonal disks"; for obtuse faces the ideal triangle crosses the
  // long chord and the angle form remains the correct region.
  const auto th = angle_coordinates(a, b, c, z);
  for (double x : th)
    if (!(x > 0.0 && x < kPi / 2.0)) return false;
  return true;
}

bool in_region_B(const Triangulation& t, int f, Point z) {
  const auto v = t.face_vertices(f);
  if (!t.face_bounded(f)) throw GeomError("in_region_B: bounded face required");
  const auto& c = t.config();
  return in_region_B(c.at(v[0]), c.at(v[1]), c.at(v[2]), z);
}

std::array<double, 3> angle_coordinates(Point a, Point b, Point c, Point z) {
  auto theta = [&](Point vi, Point vj, Point vk) {
    // associated with the edge (vj, vk) opposite vi
    const Cplx cr = ((z - vk) * (vi - vj)) / ((z - vj) * (vi - vk));
    return std::arg(cr);
  };
  return {theta(a, b, c), theta(b, c, a), theta(c, a, b)};
}

bool in_region_R(const Triangulation& t, int f, Point z) {
  if (!t.face_bounded(f)) throw GeomError("in_region_R: bounded face required");
  {
    int h = t.face_halfedge(f);
    for (int i = 0; i < 3; ++i) {
      if (!t.face_bounded(t.face_of(t.twin(h))))
        throw GeomError("in_region_R: face with a hull edge is unsupported");
      h = t.next(h);
    }
  }
  const auto v = t.face_vertices(f);
  const auto& c = t.config();
  int h = t.face_halfedge(f);
  // thetas[i] is associated with the edge from face_vertices[i] to [i+1],
  // which is opposite vertex [i+2].
  const auto th = angle_coordinates(c.at(v[0]), c.at(v[1]), c.at(v[2]), z);
  for (int i = 0; i < 3; ++i) {
    const double ambient = t.edge_theta(h);
    const double coord = th[(i + 2) % 3];
    if (!(coord > 0.0 && coord < kPi / 2.0 + ambient / 2.0)) return false;
    h = t.next(h);
  }
  return true;
}

McEstimate integral_B(Point a, Point b, Point c, long long n_samples,
                      std::uint64_t seed, int n_batches) {
  const Circle circ = circumcircle_of(a, b, c);
  return disk_mc(a, b, c, circ.center, circ.radius,
                 [&](Point z) { return in_region_B(a, b, c, z); }, n_samples,
                 seed, n_batches);
}

RegionIntegral integral_R(const Triangulation& t, int f, long long n_samples,
                          std::uint64_t seed, int n_batches) {
  const auto v = t.face_vertices(f);
  const auto& c = t.config();
  const Point a = c.at(v[0]), b = c.at(v[1]), cc = c.at(v[2]);
  const Circle circ = circumcircle_of(a, b, cc);
  RegionIntegral out;
  double sum = 0.0;
  int h = t.face_halfedge(f);
  for (int i = 0; i < 3; ++i) {
    if (!t.face_bounded(t.face_of(t.twin(h))))
      throw GeomError("integral_R: face with a hull edge is unsupported");
    const double th = t.edge_theta(h);
    sum += th * (2.0 * kPi - th);
    h = t.next(h);
  }
  out.closed_form = kPi * kPi / 16.0 + sum / 16.0;
  // every bounding arc of R(f) lies within the closed circumdisk
  out.estimate = disk_mc(a, b, cc, circ.center, circ.radius,
                         [&](Point z) { return in_region_R(t, f, z); },
                         n_samples, seed, n_batches);
  return out;
}

}  // namespace delk
