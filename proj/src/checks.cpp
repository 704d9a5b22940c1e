#include "ympinch/checks.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace ympinch {

namespace {

// Mid-grid rho samples: open grid avoiding 0 and pi exactly.
double rho_at(int i, int points) {
  return kPi * (i + 0.5) / points;
}

}  // namespace

std::vector<int> default_check_dims() {
  std::vector<int> dims;
  for (int n = 5; n <= 20; ++n) dims.push_back(n);
  return dims;
}

std::vector<double> default_check_deltas() {
  std::vector<double> deltas;
  for (int i = 0; i <= 13; ++i) deltas.push_back(0.30 + 0.05 * i);
  deltas.push_back(0.995);
  return deltas;
}

double max_breakpoint_mismatch(const std::vector<int>& dims, const std::vector<double>& deltas) {
  double worst = 0.0;
  constexpr std::array<EnvelopeId, 6> ids = {EnvelopeId::F1, EnvelopeId::F2, EnvelopeId::G1,
                                             EnvelopeId::G2, EnvelopeId::H1, EnvelopeId::H2};
  for (int n : dims) {
    for (double delta : deltas) {
      const Kernel kernel(KernelConfig{n, delta, PsiVariant::Listing});
      for (EnvelopeId id : ids) {
        const PiecewiseRadialFunction pw = kernel.piecewise(id);
        for (std::size_t i = 0; i < pw.breakpoints().size(); ++i) {
          worst = std::max(worst, std::abs(pw.left_value(i) - pw.right_value(i)));
        }
      }
      const PiecewiseRadialFunction pk = kernel.piecewise_kernel();
      for (std::size_t i = 0; i < pk.breakpoints().size(); ++i) {
        worst = std::max(worst, std::abs(pk.left_value(i) - pk.right_value(i)));
      }
    }
  }
  return worst;
}

OrderingViolation max_ordering_violation(const std::vector<int>& dims,
                                         const std::vector<double>& deltas, int rho_points) {
  OrderingViolation violation;
  for (int n : dims) {
    for (double delta : deltas) {
      const Kernel kernel(KernelConfig{n, delta, PsiVariant::Listing});
      for (int i = 0; i < rho_points; ++i) {
        const double rho = rho_at(i, rho_points);
        violation.envelope = std::max(violation.envelope, kernel.f1(rho) - kernel.f2(rho));
        violation.envelope = std::max(violation.envelope, kernel.g1(rho) - kernel.g2(rho));
        violation.envelope = std::max(violation.envelope, kernel.h1(rho) - kernel.h2(rho));
        violation.envelope = std::max(violation.envelope, -kernel.g1(rho));
        violation.eigen =
            std::max(violation.eigen, std::cos(rho) - kernel.eigen_upper(rho));
      }
    }
  }
  return violation;
}

double max_dual_path_mismatch(const std::vector<int>& dims, const std::vector<double>& deltas,
                              int rho_points, double psi_perturbation) {
  double worst = 0.0;
  constexpr std::array<PsiVariant, 2> variants = {PsiVariant::Listing, PsiVariant::Proposition};
  for (int n : dims) {
    for (double delta : deltas) {
      for (PsiVariant variant : variants) {
        const Kernel kernel(KernelConfig{n, delta, variant});
        for (int i = 0; i < rho_points; ++i) {
          const double rho = rho_at(i, rho_points);
          const double s = std::sin(rho);
          const double listing = kernel.kernel_listing(rho) + psi_perturbation * s * s;
          worst = std::max(worst, std::abs(listing - kernel.kernel_from_envelopes(rho)));
        }
      }
    }
  }
  return worst;
}

RootCertificate root_certificate(int count, double lo, double hi) {
  RootCertificate certificate;
  certificate.count = count;
  for (int j = 1; j <= count; ++j) {
    const double delta = lo + (hi - lo) * static_cast<double>(j) / (count + 1);
    const PinchParameter pinch(delta);
    const double root = rho_delta(pinch).value();
    certificate.max_residual = std::max(certificate.max_residual, rho_delta_residual(pinch, root));
    const double upper = kPi / (2.0 * std::sqrt(delta));
    if (!(root > kPi / 2.0) || !(root < upper)) certificate.all_contained = false;
  }
  return certificate;
}

OracleAgreement oracle_agreement(const std::vector<int>& dims, const std::vector<double>& deltas,
                                 int points_per_branch, double quad_tol) {
  OracleAgreement agreement;
  QuadratureOptions options;
  options.tol = quad_tol;
  for (int n : dims) {
    for (double delta : deltas) {
      const Kernel kernel(KernelConfig{n, delta, PsiVariant::Listing});
      const double adaptive = integrate_kernel(kernel, options).value;
      const double fixed = oracle_integrate(kernel, points_per_branch);
      agreement.max_deviation = std::max(agreement.max_deviation, std::abs(adaptive - fixed));
    }
  }
  const auto sin4 = [](double rho) {
    const double s = std::sin(rho);
    return s * s * s * s;
  };
  const auto cos2sin4 = [](double rho) {
    const double s = std::sin(rho);
    const double c = std::cos(rho);
    return c * c * s * s * s * s;
  };
  const std::array<double, 1> half_pi = {kPi / 2.0};
  agreement.wallis_sin4 =
      std::abs(integrate_function(sin4, 0.0, kPi, half_pi, 1e-12).value - 3.0 * kPi / 8.0);
  agreement.wallis_cos2sin4 =
      std::abs(integrate_function(cos2sin4, 0.0, kPi, half_pi, 1e-12).value - kPi / 16.0);
  return agreement;
}

CertificateOutcome threshold_certificates(const std::vector<int>& dims, PsiVariant variant,
                                          double tol, double scan_step, double offset) {
  CertificateOutcome outcome;
  outcome.min_margin = std::numeric_limits<double>::infinity();
  for (int n : dims) {
    const ThresholdResult result = find_threshold(n, tol, variant, scan_step);
    if (result.bracket_high - result.bracket_low > tol) {
      outcome.ok = false;
      outcome.detail += "n=" + std::to_string(n) + ": bracket wider than tolerance; ";
      continue;
    }
    const double above =
        integral_I(n, PinchParameter(result.delta_n + offset), variant).value;
    const double below =
        integral_I(n, PinchParameter(result.delta_n - offset), variant).value;
    if (!(above < 0.0) || !(below >= 0.0)) {
      outcome.ok = false;
      outcome.detail += "n=" + std::to_string(n) + ": certificate signs wrong; ";
    }
    outcome.min_margin = std::min({outcome.min_margin, std::abs(above), std::abs(below)});
    if (result.multiple_crossings) {
      outcome.ok = false;
      outcome.detail += "n=" + std::to_string(n) + ": multiple crossings; ";
    }
  }
  return outcome;
}

bool CheckReport::all_passed() const {
  for (const auto& item : items) {
    if (!item.passed) return false;
  }
  return true;
}

CheckReport run_checks(const CheckOptions& options) {
  const std::vector<int> dims = default_check_dims();
  const std::vector<double> deltas = default_check_deltas();
  const auto limit = [&](double fallback) { return options.tol.value_or(fallback); };

  CheckReport report;
  const auto add = [&report](std::string name, double observed, double lim, std::string detail) {
    report.items.push_back(
        {std::move(name), observed <= lim, observed, lim, std::move(detail)});
  };

  add("continuity_breakpoints", max_breakpoint_mismatch(dims, deltas), limit(1e-9),
      "max |left-right| at interior breakpoints");

  const OrderingViolation ordering = max_ordering_violation(dims, deltas, 10000);
  add("envelope_ordering", ordering.envelope, limit(1e-12),
      "max violation of f1<=f2, g1<=g2, h1<=h2, g1>=0");
  add("eigen_upper_bound", ordering.eigen, limit(1e-12),
      "max violation of cos(rho) <= eigen upper bound");

  {
    std::vector<double> dual_deltas = deltas;
    dual_deltas.push_back(0.999);
    dual_deltas.push_back(1.0);
    add("dual_path_agreement",
        max_dual_path_mismatch(dims, dual_deltas, 2001, options.psi_perturbation),
        limit(1e-10), "max |listing - envelope combination| over both variants");
  }

  {
    const RootCertificate certificate = root_certificate(200, 0.26, 0.999);
    add("root_residual", certificate.max_residual, limit(1e-10),
        "pole-free residual at computed rho_delta, 200 deltas in (0.26, 0.999)");
    report.items.push_back({"root_containment", certificate.all_contained,
                            certificate.all_contained ? 0.0 : 1.0, 0.0,
                            "rho_delta inside (pi/2, pi/(2 sqrt(delta)))"});
  }

  {
    std::vector<double> oracle_deltas = {0.90, 0.95, 0.99};
    const OracleAgreement agreement = oracle_agreement(dims, oracle_deltas, 20001, 1e-10);
    add("oracle_agreement", agreement.max_deviation, limit(1e-8),
        "adaptive vs 20001-point composite Simpson, 48 (n, delta) pairs");
    add("wallis_sanity", std::max(agreement.wallis_sin4, agreement.wallis_cos2sin4),
        limit(1e-10), "closed-form integrals of sin^4 and cos^2 sin^4");
  }

  {
    double worst = -std::numeric_limits<double>::infinity();
    for (int n : dims) {
      worst = std::max(
          worst, integral_I(n, PinchParameter(1.0), PsiVariant::Listing).value);
    }
    report.items.push_back({"delta_one_negative", worst < 0.0, worst, 0.0,
                            "max over n of I(n, 1) under the listing variant"});
  }

  if (!options.skip_thresholds) {
    const CertificateOutcome outcome =
        threshold_certificates({5, 12, 20}, PsiVariant::Listing, 1e-6, 1e-3, 1e-3);
    report.items.push_back({"threshold_certificate", outcome.ok, outcome.min_margin, 0.0,
                            outcome.ok ? "I(delta_n +- 1e-3) signs for n in {5, 12, 20}"
                                       : outcome.detail});
  }

  return report;
}

}  // namespace ympinch
