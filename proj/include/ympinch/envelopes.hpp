#pragma once

#include <array>

#include "ympinch/types.hpp"

namespace ympinch {

/// delta * sin^2(rho) * cot^2(sqrt(delta)*rho), stable near rho = 0 where the
/// factors individually degenerate (limit 1). Domain: 0 < rho < pi/sqrt(delta).
double phi_base(PinchParameter delta, double rho);

/// sqrt(delta) * cos(rho) * sin(rho) * cot(sqrt(delta)*rho), limit 1 at 0.
double psi_base(PinchParameter delta, double rho);

/// The radius in (pi/2, pi/(2 sqrt(delta))) where the upper and lower
/// comparison envelopes exchange: the unique root of
///   tan(sqrt(delta)*rho) + sqrt(delta)*tan(rho) = 0,
/// located by bisection on the pole-free form
///   F(rho) = sin(sqrt(delta)*rho)*cos(rho) + sqrt(delta)*cos(sqrt(delta)*rho)*sin(rho).
/// F is the tan form multiplied by cos(sqrt(delta)*rho)*cos(rho); inside the
/// open bracket that multiplier is strictly negative, so F flips sign exactly
/// where the tan form does and has no poles. Returns pi/2 at delta = 1, where
/// the bracket collapses.
RadialCoordinate rho_delta(PinchParameter delta);

/// Residual |F(rho)| of the pole-free root equation above.
double rho_delta_residual(PinchParameter delta, double rho);

enum class EnvelopeId { F1, F2, G1, G2, H1, H2 };

/// Evaluates the comparison envelopes and the piecewise stability kernel for
/// one (n, delta, variant) triple. All derived constants (sqrt(delta), the
/// breakpoints, the branch coefficients) are computed once at construction;
/// evaluation methods are pure and safe to call concurrently.
class Kernel {
 public:
  explicit Kernel(const KernelConfig& config);

  int dimension() const noexcept { return n_; }
  double delta() const noexcept { return delta_; }
  PsiVariant psi_variant() const noexcept { return variant_; }

  /// Envelope-exchange radius; pi/2 at delta = 1.
  double rho_delta() const noexcept { return rho_delta_; }
  /// Interior breakpoints {pi/2, rho_delta, pi/(2 sqrt(delta))}, nondecreasing.
  std::array<double, 3> breakpoints() const noexcept;

  /// Upper Hessian-comparison bound sqrt(delta)*sin(rho)*cot(sqrt(delta)*rho)
  /// on the distance-Hessian eigenvalues; the lower bound is cos(rho).
  double eigen_upper(double rho) const;
  double phi_base(double rho) const;
  double psi_base(double rho) const;
  /// Affine kernel term 1/2 + c_psi * sin^2(rho); c_psi depends on the variant.
  double affine_term(double rho) const;

  double f1(double rho) const;
  double f2(double rho) const;
  double g1(double rho) const;
  double g2(double rho) const;
  double h1(double rho) const;
  double h2(double rho) const;

  /// Kernel assembled from the four-branch explicit listing.
  double kernel_listing(double rho) const;
  /// Kernel assembled from the envelope combination
  /// 1/2 + c_psi sin^2 + 4 f2 + ((n-1)^2/2+6) g2 + 3(n-1)/2 h2
  ///   - 4n f1 - (n-1)/2 g1 - 2 h1.
  /// Must agree with kernel_listing to rounding; the check suite gates on it.
  double kernel_from_envelopes(double rho) const;
  double operator()(double rho) const { return kernel_listing(rho); }

  /// Branch formula `branch` (0..3) of the listing form evaluated at rho,
  /// regardless of which region rho lies in. Used for one-sided limits.
  double kernel_branch(int branch, double rho) const;

  /// Volume weight: (sin(sqrt(delta)*rho)/sqrt(delta))^(n-1) when the kernel
  /// is >= 0 at rho, sin^(n-1)(rho) otherwise. `kernel_sign` carries the
  /// caller's kernel value (only its sign is used).
  double volume_weight(double rho, double kernel_sign) const;

  /// kernel * volume_weight on (0, pi], extended by its continuous limits:
  /// 0 at rho = 0 (both weight branches vanish to order n-1 there) and
  /// kernel(pi) * weight(pi) at rho = pi, which is positive for delta < 1
  /// because the upper weight branch does not vanish at pi.
  double integrand(double rho) const;

  PiecewiseRadialFunction piecewise(EnvelopeId id) const;
  PiecewiseRadialFunction piecewise_kernel() const;

 private:
  double cos_sq(double rho) const;
  void check_domain(double rho) const;

  int n_;
  double delta_;
  PsiVariant variant_;
  double sqrt_delta_;
  double rho_delta_;
  double quarter_pole_;  // pi/(2 sqrt(delta)), where the comparison cot vanishes
  double c_psi_;         // sin^2 coefficient of the affine term
  // listing-branch coefficients
  double c_phi_inner_;   // (n-1)^2/2 + 10
  double c_cos_b1_;      // -(9n + 3)/2
  double c_psi_b1_;      // 3(n-1)/2
  double c_cos_b2_;      // 3(n-1)/2
  double c_psi_b23_;     // -(4n + 2)
  double c_cos_b34_;     // (n-1)^2/2 + 3(n-1)/2 + 10
  double c_phi_b4_;      // -(9n - 1)/2
  // envelope-combination coefficients
  double c_g2_;          // (n-1)^2/2 + 6
  double c_h2_;          // 3(n-1)/2
  double c_g1_;          // (n-1)/2
};

}  // namespace ympinch
