#include "delk/exactpred.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace delk {
namespace {

// Expansion arithmetic after Shewchuk: a value is a sum of doubles with
// strictly increasing magnitudes and nonoverlapping bit ranges, so the sign
// of the whole is the sign of the largest (last nonzero) component.
using Exp = std::vector<double>;

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  double bv = x - a;
  double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void two_prod(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

Exp from_double(double a) { return a == 0.0 ? Exp{} : Exp{a}; }

// Merge-based expansion sum; keeps the nonoverlapping invariant.
Exp exp_sum(const Exp& e, const Exp& f) {
  if (e.empty()) return f;
  if (f.empty()) return e;
  Exp g;
  g.reserve(e.size() + f.size());
  std::size_t i = 0, j = 0;
  while (i < e.size() && j < f.size()) {
    if (std::abs(e[i]) < std::abs(f[j])) g.push_back(e[i++]);
    else g.push_back(f[j++]);
  }
  while (i < e.size()) g.push_back(e[i++]);
  while (j < f.size()) g.push_back(f[j++]);

  Exp h;
  h.reserve(g.size());
  double q = g[0];
  for (std::size_t k = 1; k < g.size(); ++k) {
    double qq, r;
    two_sum(q, g[k], qq, r);
    if (r != 0.0) h.push_back(r);
    q = qq;
  }
  if (q != 0.0 || h.empty()) h.push_back(q);
  return h;
}

Exp exp_scale(const Exp& e, double b) {
  if (e.empty() || b == 0.0) return {};
  Exp h;
  h.reserve(2 * e.size());
  double q, r;
  two_prod(e[0], b, q, r);
  if (r != 0.0) h.push_back(r);
  for (std::size_t k = 1; k < e.size(); ++k) {
    double p, rp, qq, rq;
    two_prod(e[k], b, p, rp);
    two_sum(q, rp, qq, rq);
    if (rq != 0.0) h.push_back(rq);
    two_sum(p, qq, q, rq);
    if (rq != 0.0) h.push_back(rq);
  }
  if (q != 0.0 || h.empty()) h.push_back(q);
  return h;
}

Exp exp_mul(const Exp& e, const Exp& f) {
  Exp acc;
  for (double c : f) acc = exp_sum(acc, exp_scale(e, c));
  return acc;
}

Exp exp_neg(Exp e) {
  for (double& c : e) c = -c;
  return e;
}

Exp exp_diff(const Exp& e, const Exp& f) { return exp_sum(e, exp_neg(f)); }

int exp_sign(const Exp& e) {
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (*it > 0.0) return 1;
    if (*it < 0.0) return -1;
  }
  return 0;
}

constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

int orient2d_exact(double ax, double ay, double bx, double by, double cx,
                   double cy) {
  // ax*by - ax*cy - ay*bx + ay*cx + bx*cy - by*cx, term by term.
  double p, r;
  Exp det;
  two_prod(ax, by, p, r); det = exp_sum(det, Exp{r, p});
  two_prod(ax, -cy, p, r); det = exp_sum(det, Exp{r, p});
  two_prod(ay, -bx, p, r); det = exp_sum(det, Exp{r, p});
  two_prod(ay, cx, p, r); det = exp_sum(det, Exp{r, p});
  two_prod(bx, cy, p, r); det = exp_sum(det, Exp{r, p});
  two_prod(by, -cx, p, r); det = exp_sum(det, Exp{r, p});
  return exp_sign(det);
}

int incircle_exact(double ax, double ay, double bx, double by, double cx,
                   double cy, double dx, double dy) {
  const Exp adx = exp_diff(from_double(ax), from_double(dx));
  const Exp ady = exp_diff(from_double(ay), from_double(dy));
  const Exp bdx = exp_diff(from_double(bx), from_double(dx));
  const Exp bdy = exp_diff(from_double(by), from_double(dy));
  const Exp cdx = exp_diff(from_double(cx), from_double(dx));
  const Exp cdy = exp_diff(from_double(cy), from_double(dy));

  const Exp alift = exp_sum(exp_mul(adx, adx), exp_mul(ady, ady));
  const Exp blift = exp_sum(exp_mul(bdx, bdx), exp_mul(bdy, bdy));
  const Exp clift = exp_sum(exp_mul(cdx, cdx), exp_mul(cdy, cdy));

  const Exp bxcy = exp_diff(exp_mul(bdx, cdy), exp_mul(cdx, bdy));
  const Exp cxay = exp_diff(exp_mul(cdx, ady), exp_mul(adx, cdy));
  const Exp axby = exp_diff(exp_mul(adx, bdy), exp_mul(bdx, ady));

  Exp det = exp_mul(alift, bxcy);
  det = exp_sum(det, exp_mul(blift, cxay));
  det = exp_sum(det, exp_mul(clift, axby));
  return exp_sign(det);
}

}  // namespace

int orient2d(double ax, double ay, double bx, double by, double cx,
             double cy) {
  const double detl = (ax - cx) * (by - cy);
  const double detr = (ay - cy) * (bx - cx);
  const double det = detl - detr;
  const double detsum = std::abs(detl) + std::abs(detr);
  if (std::abs(det) > kOrientBound * detsum) return det > 0.0 ? 1 : -1;
  return orient2d_exact(ax, ay, bx, by, cx, cy);
}

int incircle(double ax, double ay, double bx, double by, double cx, double cy,
             double dx, double dy) {
  const double adx = ax - dx, ady = ay - dy;
  const double bdx = bx - dx, bdy = by - dy;
  const double cdx = cx - dx, cdy = cy - dy;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double bxcy = bdx * cdy, cxby = cdx * bdy;
  const double cxay = cdx * ady, axcy = adx * cdy;
  const double axby = adx * bdy, bxay = bdx * ady;

  const double det = alift * (bxcy - cxby) + blift * (cxay - axcy) +
                     clift * (axby - bxay);
  const double permanent = alift * (std::abs(bxcy) + std::abs(cxby)) +
                           blift * (std::abs(cxay) + std::abs(axcy)) +
                           clift * (std::abs(axby) + std::abs(bxay));
  if (std::abs(det) > kIncircleBound * permanent) return det > 0.0 ? 1 : -1;
  return incircle_exact(ax, ay, bx, by, cx, cy, dx, dy);
}

}  // namespace delk
