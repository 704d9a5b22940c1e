#pragma once

#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace ympinch {

inline constexpr double kPi = std::numbers::pi;

/// Selects the sin^2(rho) coefficient of the stability kernel's affine term.
/// The two conventions differ by (1 - 2(n-1)*delta)/2 * sin^2(rho); the
/// threshold search runs either (or both) and reports which one matches the
/// reference table.
enum class PsiVariant { Listing, Proposition };

std::string to_string(PsiVariant variant);

/// Sectional-curvature pinching constant, restricted to (1/4, 1]. Below 1/4
/// the breakpoint ordering pi/2 < rho_delta < pi/(2 sqrt(delta)) < pi is lost,
/// so such values are rejected at construction.
class PinchParameter {
 public:
  explicit PinchParameter(double delta);
  double value() const noexcept { return delta_; }

 private:
  double delta_;
};

/// Geodesic radius in (0, pi).
class RadialCoordinate {
 public:
  explicit RadialCoordinate(double rho);
  double value() const noexcept { return rho_; }

 private:
  double rho_;
};

struct KernelConfig {
  int n = 5;           ///< manifold dimension, n >= 5
  double delta = 1.0;  ///< pinching constant in (1/4, 1]
  PsiVariant psi_variant = PsiVariant::Listing;
};

/// Radial function given by ordered interior breakpoints in (0, pi) and one
/// evaluator per subinterval. Adjacent branches agree at their shared
/// breakpoint; left_value/right_value expose both one-sided values so that
/// continuity can be verified rather than assumed.
class PiecewiseRadialFunction {
 public:
  PiecewiseRadialFunction(std::vector<double> breakpoints,
                          std::vector<std::function<double(double)>> branches);

  double operator()(double rho) const;

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  std::size_t branch_count() const noexcept { return branches_.size(); }

  /// Branch left of breakpoint i, evaluated at the breakpoint.
  double left_value(std::size_t i) const;
  /// Branch right of breakpoint i, evaluated at the breakpoint.
  double right_value(std::size_t i) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<std::function<double(double)>> branches_;
};

}  // namespace ympinch
