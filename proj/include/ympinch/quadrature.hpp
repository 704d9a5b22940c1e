#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ympinch/envelopes.hpp"

namespace ympinch {

/// Raised when the adaptive error estimate stalls above the requested
/// tolerance (signals an unstable evaluation region).
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegralResult {
  double value = 0.0;
  /// Absolute estimate, sum of accepted-leaf estimates. Bounded by
  /// max(tol, rel_tol * |value|) on return.
  double error_estimate = 0.0;
  int subintervals = 0;  ///< accepted leaves of the adaptive refinement
  std::vector<double> sign_change_points;  ///< certified kernel roots in (0, pi)
};

struct QuadratureOptions {
  double tol = 1e-10;      ///< absolute tolerance
  double rel_tol = 1e-12;  ///< relative escape for large integrals, where an
                           ///< absolute 1e-10 would sit below double rounding
  double scan_resolution = 1e-3;  ///< grid step (radians) of the sign-change scan
};

/// All kernel roots in (lo, hi), located by grid scan at `scan_resolution`
/// followed by bisection to 1e-12. Every returned point is certified by
/// opposite kernel signs at +-1e-9; tangencies without a sign flip are not
/// reported. The interval must lie within a single smooth branch.
std::vector<double> find_sign_changes(const Kernel& kernel, double lo, double hi,
                                      double scan_resolution = 1e-3);

/// Integral of kernel * volume weight over (0, pi). Subdivides exactly at the
/// kernel breakpoints {pi/2, rho_delta, pi/(2 sqrt(delta))} and at every
/// detected kernel sign change (which switches the weight branch), then runs
/// adaptive Simpson refinement (interval halving, embedded lower-order
/// estimate) on each piece. Deterministic: pieces are summed in increasing
/// order of their left endpoint.
IntegralResult integrate_kernel(const Kernel& kernel, const QuadratureOptions& options = {});

/// Fixed composite-Simpson evaluation over the same breakpoint/sign-change
/// splitting, `points_per_branch` nodes per piece (odd, >= 3). No adaptivity;
/// serves as the independent cross-check of integrate_kernel.
double oracle_integrate(const Kernel& kernel, int points_per_branch,
                        double scan_resolution = 1e-3);

/// Adaptive driver for an arbitrary radial integrand over [lo, hi] with
/// declared interior breakpoints. Used for the closed-form sanity integrals.
IntegralResult integrate_function(const std::function<double(double)>& f, double lo,
                                  double hi, std::span<const double> interior_breakpoints,
                                  double tol);

/// Surface area of the unit (n-1)-sphere, 2 pi^(n/2) / Gamma(n/2).
double unit_sphere_area(int n);

}  // namespace ympinch
