#include "ympinch/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ympinch {

namespace {

// Below this radius cot(sqrt(delta)*rho) overflows while the envelope
// products stay O(1); a 4th-order series keeps full double accuracy
// (truncation error O(rho^6) < 1e-24 at the cutoff).
constexpr double kSeriesCutoff = 1e-4;

double eigen_upper_impl(double delta, double sqrt_delta, double rho) {
  if (rho < kSeriesCutoff) {
    const double r2 = rho * rho;
    const double c2 = delta / 3.0 + 1.0 / 6.0;
    const double c4 = 1.0 / 120.0 + delta / 18.0 - delta * delta / 45.0;
    return 1.0 - c2 * r2 + c4 * r2 * r2;
  }
  const double u = sqrt_delta * rho;
  return sqrt_delta * std::sin(rho) * (std::cos(u) / std::sin(u));
}

double pole_free_residual(double sqrt_delta, double rho) {
  const double u = sqrt_delta * rho;
  return std::sin(u) * std::cos(rho) + sqrt_delta * std::cos(u) * std::sin(rho);
}

// x^e for small nonnegative integer e, by repeated squaring.
double ipow(double x, int e) {
  double r = 1.0;
  double b = x;
  for (; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

}  // namespace

std::string to_string(PsiVariant variant) {
  return variant == PsiVariant::Listing ? "listing" : "proposition";
}

PinchParameter::PinchParameter(double delta) : delta_(delta) {
  if (!(delta > 0.25) || !(delta <= 1.0)) {
    throw std::domain_error("pinching constant must lie in (1/4, 1], got " +
                            std::to_string(delta));
  }
}

RadialCoordinate::RadialCoordinate(double rho) : rho_(rho) {
  if (!(rho > 0.0) || !(rho < kPi)) {
    throw std::domain_error("radial coordinate must lie in (0, pi), got " +
                            std::to_string(rho));
  }
}

PiecewiseRadialFunction::PiecewiseRadialFunction(
    std::vector<double> breakpoints,
    std::vector<std::function<double(double)>> branches)
    : breakpoints_(std::move(breakpoints)), branches_(std::move(branches)) {
  if (branches_.size() != breakpoints_.size() + 1) {
    throw std::invalid_argument("piecewise function needs one branch more than breakpoints");
  }
  double prev = 0.0;
  for (double b : breakpoints_) {
    if (!(b > prev) || !(b < kPi)) {
      throw std::invalid_argument("breakpoints must be strictly increasing within (0, pi)");
    }
    prev = b;
  }
}

double PiecewiseRadialFunction::operator()(double rho) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), rho);
  return branches_[static_cast<std::size_t>(it - breakpoints_.begin())](rho);
}

double PiecewiseRadialFunction::left_value(std::size_t i) const {
  return branches_.at(i)(breakpoints_.at(i));
}

double PiecewiseRadialFunction::right_value(std::size_t i) const {
  return branches_.at(i + 1)(breakpoints_.at(i));
}

double phi_base(PinchParameter delta, double rho) {
  const double sd = std::sqrt(delta.value());
  if (!(rho > 0.0) || !(sd * rho < kPi)) {
    throw std::domain_error("phi_base requires 0 < rho < pi/sqrt(delta)");
  }
  const double a = eigen_upper_impl(delta.value(), sd, rho);
  return a * a;
}

double psi_base(PinchParameter delta, double rho) {
  const double sd = std::sqrt(delta.value());
  if (!(rho > 0.0) || !(sd * rho < kPi)) {
    throw std::domain_error("psi_base requires 0 < rho < pi/sqrt(delta)");
  }
  return std::cos(rho) * eigen_upper_impl(delta.value(), sd, rho);
}

RadialCoordinate rho_delta(PinchParameter delta) {
  if (delta.value() == 1.0) {
    return RadialCoordinate(kPi / 2.0);  // collapsed bracket
  }
  const double sd = std::sqrt(delta.value());
  double lo = kPi / 2.0;
  double hi = kPi / (2.0 * sd);
  const double f_lo = pole_free_residual(sd, lo);
  const double f_hi = pole_free_residual(sd, hi);
  if (!(f_lo > 0.0) || !(f_hi < 0.0)) {
    throw std::domain_error("rho_delta: no sign change on (pi/2, pi/(2 sqrt(delta)))");
  }
  // Plain bisection; the bracket is tight and F is smooth, so ~60 halvings
  // reach the rounding floor.
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pole_free_residual(sd, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return RadialCoordinate(0.5 * (lo + hi));
}

double rho_delta_residual(PinchParameter delta, double rho) {
  return std::abs(pole_free_residual(std::sqrt(delta.value()), rho));
}

Kernel::Kernel(const KernelConfig& config)
    : n_(config.n),
      delta_(PinchParameter(config.delta).value()),
      variant_(config.psi_variant) {
  if (n_ < 5) {
    throw std::domain_error("kernel requires dimension n >= 5, got " + std::to_string(n_));
  }
  sqrt_delta_ = std::sqrt(delta_);
  quarter_pole_ = kPi / (2.0 * sqrt_delta_);
  rho_delta_ = ympinch::rho_delta(PinchParameter(delta_)).value();
  // The breakpoint ordering is asserted rather than assumed.
  if (!(rho_delta_ >= kPi / 2.0) || !(rho_delta_ <= quarter_pole_)) {
    throw std::logic_error("rho_delta fell outside (pi/2, pi/(2 sqrt(delta)))");
  }

  const double n = n_;
  const double shared = (2.0 / n + n) * (1.0 - delta_);
  c_psi_ = variant_ == PsiVariant::Listing
               ? shared - (n - 1.0) * delta_ / 2.0
               : shared - (1.0 - (n - 1.0) * delta_) / 2.0;

  c_phi_inner_ = (n - 1.0) * (n - 1.0) / 2.0 + 10.0;
  c_cos_b1_ = -(9.0 * n + 3.0) / 2.0;
  c_psi_b1_ = 1.5 * (n - 1.0);
  c_cos_b2_ = 1.5 * (n - 1.0);
  c_psi_b23_ = -(4.0 * n + 2.0);
  c_cos_b34_ = (n - 1.0) * (n - 1.0) / 2.0 + 1.5 * (n - 1.0) + 10.0;
  c_phi_b4_ = -(9.0 * n - 1.0) / 2.0;

  c_g2_ = (n - 1.0) * (n - 1.0) / 2.0 + 6.0;
  c_h2_ = 1.5 * (n - 1.0);
  c_g1_ = (n - 1.0) / 2.0;
}

std::array<double, 3> Kernel::breakpoints() const noexcept {
  return {kPi / 2.0, rho_delta_, quarter_pole_};
}

void Kernel::check_domain(double rho) const {
  // rho == pi is admitted so the endpoint limits of the integrand can be
  // evaluated directly; every branch formula is finite there.
  if (!(rho > 0.0) || !(rho <= kPi)) {
    throw std::domain_error("kernel evaluation requires rho in (0, pi], got " +
                            std::to_string(rho));
  }
}

double Kernel::cos_sq(double rho) const {
  const double c = std::cos(rho);
  return c * c;
}

double Kernel::eigen_upper(double rho) const {
  check_domain(rho);
  return eigen_upper_impl(delta_, sqrt_delta_, rho);
}

double Kernel::phi_base(double rho) const {
  const double a = eigen_upper(rho);
  return a * a;
}

double Kernel::psi_base(double rho) const {
  return std::cos(rho) * eigen_upper(rho);
}

double Kernel::affine_term(double rho) const {
  check_domain(rho);
  const double s = std::sin(rho);
  return 0.5 + c_psi_ * s * s;
}

double Kernel::f1(double rho) const {
  check_domain(rho);
  if (rho <= kPi / 2.0) return cos_sq(rho);
  if (rho <= quarter_pole_) return psi_base(rho);
  return phi_base(rho);
}

double Kernel::f2(double rho) const {
  check_domain(rho);
  return rho <= rho_delta_ ? phi_base(rho) : cos_sq(rho);
}

double Kernel::g1(double rho) const {
  check_domain(rho);
  if (rho <= kPi / 2.0) return cos_sq(rho);
  if (rho <= quarter_pole_) return 0.0;
  return phi_base(rho);
}

double Kernel::g2(double rho) const { return f2(rho); }

double Kernel::h1(double rho) const {
  check_domain(rho);
  return rho <= kPi / 2.0 ? cos_sq(rho) : psi_base(rho);
}

double Kernel::h2(double rho) const {
  check_domain(rho);
  return rho <= kPi / 2.0 ? psi_base(rho) : cos_sq(rho);
}

double Kernel::kernel_listing(double rho) const {
  check_domain(rho);
  const double s = std::sin(rho);
  const double c = std::cos(rho);
  const double a = eigen_upper_impl(delta_, sqrt_delta_, rho);
  const double phi = a * a;
  const double psi = a * c;
  const double c2 = c * c;
  const double affine = 0.5 + c_psi_ * s * s;
  if (rho <= kPi / 2.0) return affine + c_cos_b1_ * c2 + c_phi_inner_ * phi + c_psi_b1_ * psi;
  if (rho <= rho_delta_) return affine + c_cos_b2_ * c2 + c_phi_inner_ * phi + c_psi_b23_ * psi;
  if (rho <= quarter_pole_) return affine + c_cos_b34_ * c2 + c_psi_b23_ * psi;
  return affine + c_cos_b34_ * c2 + c_phi_b4_ * phi - 2.0 * psi;
}

double Kernel::kernel_branch(int branch, double rho) const {
  check_domain(rho);
  const double s = std::sin(rho);
  const double c = std::cos(rho);
  const double a = eigen_upper_impl(delta_, sqrt_delta_, rho);
  const double phi = a * a;
  const double psi = a * c;
  const double c2 = c * c;
  const double affine = 0.5 + c_psi_ * s * s;
  switch (branch) {
    case 0: return affine + c_cos_b1_ * c2 + c_phi_inner_ * phi + c_psi_b1_ * psi;
    case 1: return affine + c_cos_b2_ * c2 + c_phi_inner_ * phi + c_psi_b23_ * psi;
    case 2: return affine + c_cos_b34_ * c2 + c_psi_b23_ * psi;
    case 3: return affine + c_cos_b34_ * c2 + c_phi_b4_ * phi - 2.0 * psi;
    default: throw std::out_of_range("kernel branch index must be 0..3");
  }
}

double Kernel::kernel_from_envelopes(double rho) const {
  const double s = std::sin(rho);
  return 0.5 + c_psi_ * s * s + 4.0 * f2(rho) + c_g2_ * g2(rho) + c_h2_ * h2(rho) -
         4.0 * n_ * f1(rho) - c_g1_ * g1(rho) - 2.0 * h1(rho);
}

double Kernel::volume_weight(double rho, double kernel_sign) const {
  check_domain(rho);
  if (kernel_sign >= 0.0) {
    return ipow(std::sin(sqrt_delta_ * rho) / sqrt_delta_, n_ - 1);
  }
  return ipow(std::sin(rho), n_ - 1);
}

double Kernel::integrand(double rho) const {
  // Continuous extension at the endpoints: both weight branches vanish to
  // order n-1 at rho = 0, but at rho = pi the kernel is positive and the
  // upper weight branch sin(sqrt(delta) pi)/sqrt(delta) does not vanish for
  // delta < 1, so the limit there is kernel(pi) * weight(pi).
  if (rho <= 0.0 || rho > kPi) return 0.0;
  const double k = kernel_listing(rho);
  return k * volume_weight(rho, k);
}

PiecewiseRadialFunction Kernel::piecewise(EnvelopeId id) const {
  const auto cos2 = [](double rho) {
    const double c = std::cos(rho);
    return c * c;
  };
  const auto phi = [this](double rho) { return phi_base(rho); };
  const auto psi = [this](double rho) { return psi_base(rho); };
  const auto zero = [](double) { return 0.0; };

  using Branch = std::function<double(double)>;
  std::vector<double> bps;
  std::vector<Branch> branches;
  const double half = kPi / 2.0;
  switch (id) {
    case EnvelopeId::F1:
      bps = {half, quarter_pole_};
      branches = {cos2, psi, phi};
      break;
    case EnvelopeId::F2:
    case EnvelopeId::G2:
      bps = {rho_delta_};
      branches = {phi, cos2};
      break;
    case EnvelopeId::G1:
      bps = {half, quarter_pole_};
      branches = {cos2, zero, phi};
      break;
    case EnvelopeId::H1:
      bps = {half};
      branches = {cos2, psi};
      break;
    case EnvelopeId::H2:
      bps = {half};
      branches = {psi, cos2};
      break;
  }
  // Drop empty subintervals (breakpoints coincide as delta -> 1).
  std::vector<double> kept_bps;
  std::vector<Branch> kept_branches;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (kept_bps.empty() || bps[i] > kept_bps.back()) {
      kept_bps.push_back(bps[i]);
      kept_branches.push_back(branches[i]);
    }
  }
  kept_branches.push_back(branches.back());
  return PiecewiseRadialFunction(std::move(kept_bps), std::move(kept_branches));
}

PiecewiseRadialFunction Kernel::piecewise_kernel() const {
  using Branch = std::function<double(double)>;
  const std::array<double, 3> bps = breakpoints();
  std::vector<double> kept_bps;
  std::vector<Branch> kept_branches;
  for (int i = 0; i < 3; ++i) {
    if (kept_bps.empty() || bps[static_cast<std::size_t>(i)] > kept_bps.back()) {
      kept_bps.push_back(bps[static_cast<std::size_t>(i)]);
      kept_branches.push_back([this, i](double rho) { return kernel_branch(i, rho); });
    }
  }
  kept_branches.push_back([this](double rho) { return kernel_branch(3, rho); });
  return PiecewiseRadialFunction(std::move(kept_bps), std::move(kept_branches));
}

}  // namespace ympinch
