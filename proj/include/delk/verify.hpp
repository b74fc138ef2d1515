#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "delk/geom.hpp"

namespace delk {

struct CheckResult {
  std::string name;
  std::string identity;  // the relation being verified
  enum Status { PASS, FAIL, REPORT } status = PASS;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  double sigma = 0.0;  // sigma distance for stochastic checks
  std::string detail;

  bool asserted() const { return status != REPORT; }
  bool ok() const { return status != FAIL; }
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  bool quick = false;          // reduced sample counts
  long long mc_samples = 0;    // 0 = default per mode
  long long samples() const {
    if (mc_samples > 0) return mc_samples;
    return quick ? 100000 : 1000000;
  }
};

/// Deterministic well-separated test configuration with n free points.
PointConfiguration random_config(int n_free, std::uint64_t seed);

// One entry per acceptance criterion, in order.
CheckResult check_hessian_oracle(const VerifyOptions& o);      // 1
CheckResult check_positivity(const VerifyOptions& o);          // 2
CheckResult check_flip_lemma(const VerifyOptions& o);          // 3
CheckResult check_maximality(const VerifyOptions& o);          // 4
CheckResult check_covariance(const VerifyOptions& o);          // 5
CheckResult check_top_form(const VerifyOptions& o);            // 6
CheckResult check_weil_petersson(const VerifyOptions& o);      // 7
CheckResult check_face_identities(const VerifyOptions& o);     // 8
CheckResult check_ptolemy(const VerifyOptions& o);             // 9
CheckResult check_region_integral_b(const VerifyOptions& o);   // 10
CheckResult check_region_integral_r(const VerifyOptions& o);   // 11
CheckResult check_growth(const VerifyOptions& o);              // 12
CheckResult check_jacobian_identity(const VerifyOptions& o);   // 13
CheckResult check_dual_continuity(const VerifyOptions& o);     // 14
CheckResult check_angle_pattern(const VerifyOptions& o);       // 15
CheckResult check_flip_discontinuity(const VerifyOptions& o);  // 16 (report)

/// The full suite in criterion order, plus exploratory report rows.
std::vector<CheckResult> run_acceptance(const VerifyOptions& o,
                                        bool with_reports = true);

}  // namespace delk
