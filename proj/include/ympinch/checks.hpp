#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ympinch/threshold.hpp"

namespace ympinch {

/// Dimensions 5..20.
std::vector<int> default_check_dims();
/// Pinching grid {0.30, 0.35, ..., 0.95} plus 0.995.
std::vector<double> default_check_deltas();

/// Largest |left - right| branch mismatch of f1, f2, g1, g2, h1, h2 and the
/// kernel at their interior breakpoints, over the (n, delta) grid.
double max_breakpoint_mismatch(const std::vector<int>& dims, const std::vector<double>& deltas);

struct OrderingViolation {
  double envelope = 0.0;  ///< worst of f1-f2, g1-g2, h1-h2, -g1
  double eigen = 0.0;     ///< worst of cos(rho) - eigen_upper(rho)
};
/// Envelope ordering and the eigenvalue bound on a uniform rho grid.
OrderingViolation max_ordering_violation(const std::vector<int>& dims,
                                         const std::vector<double>& deltas, int rho_points);

/// Largest |listing - envelope combination| kernel mismatch over both
/// variants. `psi_perturbation` is added to the listing path's sin^2
/// coefficient (diagnostic knob: a nonzero value must break the agreement).
double max_dual_path_mismatch(const std::vector<int>& dims, const std::vector<double>& deltas,
                              int rho_points, double psi_perturbation = 0.0);

struct RootCertificate {
  double max_residual = 0.0;  ///< pole-free residual at the computed roots
  bool all_contained = true;  ///< rho_delta in (pi/2, pi/(2 sqrt(delta)))
  int count = 0;
};
/// rho_delta certificates for `count` evenly spaced deltas in (lo, hi).
RootCertificate root_certificate(int count, double lo, double hi);

struct OracleAgreement {
  double max_deviation = 0.0;   ///< adaptive vs composite Simpson
  double wallis_sin4 = 0.0;     ///< |integral sin^4 - 3 pi/8|
  double wallis_cos2sin4 = 0.0; ///< |integral cos^2 sin^4 - pi/16|
};
OracleAgreement oracle_agreement(const std::vector<int>& dims, const std::vector<double>& deltas,
                                 int points_per_branch, double quad_tol);

struct CertificateOutcome {
  bool ok = true;
  double min_margin = 0.0;  ///< smallest |I| at delta_n +- offset with correct sign
  std::string detail;
};
/// Threshold certificates: bracket width <= tol, I(delta_n + offset) < 0,
/// I(delta_n - offset) >= 0 for each requested dimension.
CertificateOutcome threshold_certificates(const std::vector<int>& dims, PsiVariant variant,
                                          double tol, double scan_step, double offset);

struct CheckOptions {
  /// Overrides the tolerance-parameterized limits (continuity, ordering,
  /// eigen bound, dual path, root residual, oracle agreement, Wallis).
  std::optional<double> tol;
  /// Injected into the listing path of the dual-path check; nonzero values
  /// are expected to fail that check.
  double psi_perturbation = 0.0;
  /// Skip the threshold certificates (they dominate the runtime).
  bool skip_thresholds = false;
};

struct CheckItem {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_passed() const;
};

/// Full validation matrix: continuity, ordering, eigen bound, dual path,
/// root certificates, oracle agreement, Wallis sanity, delta = 1 sign, and
/// threshold certificates for n in {5, 12, 20}.
CheckReport run_checks(const CheckOptions& options = {});

}  // namespace ympinch
