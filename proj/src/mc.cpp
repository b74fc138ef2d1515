#include "delk/mc.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace delk {

int worker_count() {
  const char* env = std::getenv("DELK_THREADS");
  if (!env) return 1;
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  const int n = std::atoi(env);
  return std::min(std::max(n, 1), hw);
}

std::vector<double> run_batches(int n_batches,
                                const std::function<double(int)>& fn) {
  std::vector<double> out(n_batches, 0.0);
  const int workers = std::min(worker_count(), n_batches);
  if (workers <= 1) {
    for (int b = 0; b < n_batches; ++b) out[b] = fn(b);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int b = w; b < n_batches; b += workers) out[b] = fn(b);
    });
  for (auto& th : pool) th.join();
  return out;
}

namespace {
constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double batch_stderr(const std::vector<double>& batch_means) {
  const int b = static_cast<int>(batch_means.size());
  if (b < 2) return 0.0;
  double m = 0.0;
  for (double x : batch_means) m += x;
  m /= b;
  double s2 = 0.0;
  for (double x : batch_means) s2 += (x - m) * (x - m);
  s2 /= (b - 1);
  return std::sqrt(s2 / b);
}

// Density of the one-point-extended configuration, holding the base fixed;
// returns false on degeneracy (duplicate point, failed triangulation).
bool extended_det(const PointConfiguration& base, Point z, double& det_out) {
  std::vector<std::optional<Point>> pts;
  for (int v = 0; v < base.size(); ++v)
    pts.push_back(base.is_infinite(v) ? std::nullopt
                                      : std::optional<Point>(base.at(v)));
  pts.push_back(z);
  try {
    PointConfiguration cfg(std::move(pts), base.gauge());
    const Triangulation t = delaunay(cfg);
    const KahlerMatrix m = kahler_matrix(t);
    const auto& g = base.gauge();
    det_out = det_excluding(m, {g[0], g[1], g[2]});
    return std::isfinite(det_out);
  } catch (const GeomError&) {
    return false;
  }
}

}  // namespace

Rng::Rng(RngSpec spec)
    : eng_(splitmix(splitmix(spec.seed) ^ splitmix(~spec.stream))) {}

double Rng::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

std::pair<Point, double> sphere_proposal(Rng& rng) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double r2 = u1 / (1.0 - u1);
  const double r = std::sqrt(r2);
  const double phi = 2.0 * kPi * u2;
  const Point z(r * std::cos(phi), r * std::sin(phi));
  const double q = 1.0 / (kPi * (1.0 + r2) * (1.0 + r2));
  return {z, q};
}

McEstimate estimate_volume(int n_free, long long n_samples,
                           std::uint64_t seed, int n_batches) {
  const auto t0 = std::chrono::steady_clock::now();
  McEstimate est;
  est.seed = seed;
  if (n_free == 0) {  // empty integral: density 1 by convention
    est.mean = 1.0;
    est.stderr_ = 0.0;
    est.n = n_samples;
    return est;
  }
  if (n_batches > n_samples) n_batches = static_cast<int>(n_samples);
  const long long per_batch = n_samples / n_batches;
  std::vector<long long> rejected(n_batches, 0);
  const std::vector<double> means = run_batches(n_batches, [&](int b) {
    Rng rng({seed, static_cast<std::uint64_t>(b)});
    double acc = 0.0;
    for (long long i = 0; i < per_batch; ++i) {
      std::vector<Point> pts(n_free);
      double qprod = 1.0;
      for (int k = 0; k < n_free; ++k) {
        auto [z, q] = sphere_proposal(rng);
        pts[k] = z;
        qprod *= q;
      }
      double w = 0.0;
      try {
        w = measure_density(PointConfiguration::standard(pts)) / qprod;
        if (!std::isfinite(w)) {
          rejected[b] += 1;
          w = 0.0;
        }
      } catch (const GeomError&) {
        rejected[b] += 1;
        w = 0.0;
      }
      if (w < 0.0)
        throw GeomError("estimate_volume: negative importance weight; the "
                        "density must be nonnegative on Delaunay input");
      acc += w;
    }
    return acc / per_batch;
  });
  est.n = per_batch * n_batches;
  for (long long r : rejected) est.rejected += r;
  double m = 0.0;
  for (double x : means) m += x;
  est.mean = m / means.size();
  est.stderr_ = batch_stderr(means);
  est.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return est;
}

GrowthCheck conditional_growth_check(const PointConfiguration& base,
                                     long long n_samples, std::uint64_t seed) {
  GrowthCheck out;
  const Triangulation t = delaunay(base);
  const KahlerMatrix m = kahler_matrix(t);
  const auto& g = base.gauge();
  out.base_det = det_excluding(m, {g[0], g[1], g[2]});

  const int n_batches = 100;
  const long long per_batch = std::max(1LL, n_samples / n_batches);
  out.lhs.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<long long> rejected(n_batches, 0);
  const std::vector<double> means = run_batches(n_batches, [&](int b) {
    Rng rng({seed, 1000 + static_cast<std::uint64_t>(b)});
    double acc = 0.0;
    for (long long i = 0; i < per_batch; ++i) {
      auto [z, q] = sphere_proposal(rng);
      double det = 0.0;
      if (extended_det(base, z, det)) acc += det / q;
      else rejected[b] += 1;
    }
    return acc / per_batch;
  });
  out.lhs.n = per_batch * n_batches;
  for (long long r : rejected) out.lhs.rejected += r;
  double mm = 0.0;
  for (double x : means) mm += x;
  out.lhs.mean = mm / means.size();
  out.lhs.stderr_ = batch_stderr(means);
  out.lhs.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const int n_free = base.free_count();
  out.rhs_plain = (n_free + 1) * (kPi * kPi / 8.0) * out.base_det;
  double sum_interior = 0.0, sum_all = 0.0;
  for (int h : t.edges()) {
    const double th = t.edge_theta(h);
    sum_all += th * (2.0 * kPi - th);
    if (t.edge_interior(h)) sum_interior += th * (2.0 * kPi - th);
  }
  out.rhs_refined_interior =
      out.rhs_plain + 0.125 * sum_interior * out.base_det;
  out.rhs_refined_full = out.rhs_plain + 0.125 * sum_all * out.base_det;
  const double slack = 0.99;
  out.pass_plain = out.lhs.lower3() >= out.rhs_plain * slack;
  out.pass_refined_interior =
      out.lhs.lower3() >= out.rhs_refined_interior * slack;
  return out;
}

std::vector<GrowthRow> growth_chain(int n_max, long long n_samples,
                                    std::uint64_t seed) {
  std::vector<GrowthRow> rows;
  double fact = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    GrowthRow row;
    row.n_free = n;
    row.volume = estimate_volume(n, n_samples, seed + 77 * n);
    if (n > 0) fact *= n;
    row.z_n = row.volume.mean / fact;
    row.z_bound = std::pow(kPi * kPi / 8.0, n);
    if (n >= 1) {
      const auto& prev = rows.back().volume;
      row.ratio = row.volume.mean / (n * prev.mean);
      // first-order error propagation on the ratio
      const double rel_err =
          std::sqrt(std::pow(row.volume.stderr_ / row.volume.mean, 2) +
                    std::pow(prev.stderr_ / std::max(prev.mean, 1e-300), 2));
      row.ratio_pass =
          row.ratio * (1.0 + 3.0 * rel_err) >= (kPi * kPi / 8.0) * 0.99;
    }
    rows.push_back(row);
  }
  return rows;
}

LocalBoundReport local_bound_search(const PointConfiguration& base,
                                    long long n_samples, std::uint64_t seed) {
  LocalBoundReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  const Triangulation t = delaunay(base);
  const KahlerMatrix m = kahler_matrix(t);
  const auto& g = base.gauge();
  const double base_det = det_excluding(m, {g[0], g[1], g[2]});
  const double bound = (base.free_count() + 1) * (kPi * kPi / 8.0) * base_det;
  Rng rng({seed, 424242});
  for (long long i = 0; i < n_samples; ++i) {
    auto [z, q] = sphere_proposal(rng);
    double det = 0.0;
    if (!extended_det(base, z, det)) continue;
    rep.n += 1;
    const double ratio = det / (q * bound);
    if (ratio < rep.min_ratio) {
      rep.min_ratio = ratio;
      rep.argmin = z;
    }
  }
  return rep;
}

}  // namespace delk
