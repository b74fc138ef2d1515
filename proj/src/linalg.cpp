#include "delk/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace delk {

std::complex<double> det_lu(CMat a) {
  const int n = a.n();
  std::complex<double> det(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == std::complex<double>(0.0)) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const std::complex<double> f = a(i, k) / a(k, k);
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::vector<double> hermitian_eigenvalues(const CMat& a) {
  const int n = a.n();
  if (n == 0) return {};
  const int m = 2 * n;
  std::vector<double> s(static_cast<std::size_t>(m) * m, 0.0);
  auto S = [&](int i, int j) -> double& {
    return s[static_cast<std::size_t>(i) * m + j];
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = 0.5 * (a(i, j).real() + a(j, i).real());
      const double im = 0.5 * (a(i, j).imag() - a(j, i).imag());
      S(i, j) = re;
      S(i + n, j + n) = re;
      S(i, j + n) = -im;
      S(i + n, j) = im;
    }
  // cyclic Jacobi sweeps
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) off += S(p, q) * S(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) {
        const double apq = S(p, q);
        if (apq == 0.0) continue;
        const double theta = (S(q, q) - S(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < m; ++k) {
          const double skp = S(k, p), skq = S(k, q);
          S(k, p) = c * skp - sn * skq;
          S(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < m; ++k) {
          const double spk = S(p, k), sqk = S(q, k);
          S(p, k) = c * spk - sn * sqk;
          S(q, k) = sn * spk + c * sqk;
        }
      }
  }
  std::vector<double> ev(m);
  for (int i = 0; i < m; ++i) ev[i] = S(i, i);
  std::sort(ev.begin(), ev.end());
  // the embedding doubles every eigenvalue; return each once
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = 0.5 * (ev[2 * i] + ev[2 * i + 1]);
  return out;
}

double pfaffian_inplace(std::vector<double>& a, int n) {
  auto M = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * n + j];
  };
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  double result = 1.0;
  for (int k = 0; k + 1 < n; k += 2) {
    int kp = k + 1;
    for (int i = k + 2; i < n; ++i)
      if (std::abs(M(i, k)) > std::abs(M(kp, k))) kp = i;
    if (kp != k + 1) {
      for (int i = 0; i < n; ++i) std::swap(M(k + 1, i), M(kp, i));
      for (int i = 0; i < n; ++i) std::swap(M(i, k + 1), M(i, kp));
      result = -result;
    }
    const double piv = M(k, k + 1);
    if (piv == 0.0) return 0.0;
    result *= piv;
    if (k + 2 >= n) continue;
    std::vector<double> tau(n - (k + 2));
    for (int i = k + 2; i < n; ++i) tau[i - (k + 2)] = M(k, i) / piv;
    for (int i = k + 2; i < n; ++i)
      for (int j = k + 2; j < n; ++j)
        M(i, j) +=
            tau[i - (k + 2)] * M(j, k + 1) - tau[j - (k + 2)] * M(i, k + 1);
  }
  return result;
}

}  // namespace delk
