#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "delk/kahler.hpp"

namespace delk {

/// Deterministic stream id: the same (seed, stream) always produces the
/// same sequence; distinct streams are decorrelated by seed scrambling.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Worker count for batch-parallel estimators: the DELK_THREADS environment
/// variable, clamped to [1, hardware]. Results are identical for any value
/// (per-batch streams, fixed merge order).
int worker_count();

/// Evaluate fn(batch) for batch = 0..n_batches-1 on worker_count() threads
/// and return the results in batch order.
std::vector<double> run_batches(int n_batches,
                                const std::function<double(int)>& fn);

class Rng {
 public:
  explicit Rng(RngSpec spec);
  double uniform();  // [0, 1)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::mt19937_64 eng_;
};

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long long n = 0;
  long long rejected = 0;
  std::uint64_t seed = 0;
  double seconds = 0.0;

  double lower3() const { return mean - 3.0 * stderr_; }
  double upper3() const { return mean + 3.0 * stderr_; }
  double sigma_distance(double target) const {
    return stderr_ > 0 ? (mean - target) / stderr_ : 0.0;
  }
};

/// Sample from the sphere-uniform law on the plane chart,
/// q(z) = 1/(pi (1+|z|^2)^2); returns the point and its density.
std::pair<Point, double> sphere_proposal(Rng& rng);

/// Importance-sampled total volume V_N = int prod d^2z 2^N det D with the
/// sphere-uniform proposal and batch-mean standard errors. Degenerate
/// samples are rejected (counted) and contribute zero.
McEstimate estimate_volume(int n_free, long long n_samples,
                           std::uint64_t seed, int n_batches = 100);

/// One-point conditional growth check: MC estimate of
/// int d^2z det D(base + z) against (N+1) (pi^2/8) det D(base), and the
/// sharper variant with the interior-edge angle sum added.
struct GrowthCheck {
  McEstimate lhs;
  double rhs_plain = 0.0;
  double rhs_refined_interior = 0.0;  // interior-edge angle sum only
  double rhs_refined_full = 0.0;      // all edges, hull conventions included
  double base_det = 0.0;
  bool pass_plain = false;
  bool pass_refined_interior = false;
};
GrowthCheck conditional_growth_check(const PointConfiguration& base,
                                     long long n_samples, std::uint64_t seed);

/// Volume chain V_0..V_max with ratio and factorial-normalized tests.
struct GrowthRow {
  int n_free;
  McEstimate volume;
  double z_n;             // V_N / N!
  double z_bound;         // (pi^2/8)^N
  double ratio = 0.0;     // V_N / (N V_{N-1}), N >= 1
  bool ratio_pass = true; // ratio >= pi^2/8 within combined 3 sigma
};
std::vector<GrowthRow> growth_chain(int n_max, long long n_samples,
                                    std::uint64_t seed);

/// Exploratory search for a pointwise version of the growth bound:
/// reports the infimum over sampled z of
/// det D(base+z) / (q(z) (N+1) (pi^2/8) det D(base)). Values below 1 show
/// the global bound has no pointwise analogue.
struct LocalBoundReport {
  double min_ratio = 0.0;
  Point argmin;
  long long n = 0;
};
LocalBoundReport local_bound_search(const PointConfiguration& base,
                                    long long n_samples, std::uint64_t seed);

}  // namespace delk
