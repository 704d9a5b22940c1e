#include "ympinch/threshold.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <thread>

namespace ympinch {

namespace {

constexpr double kScanLow = 0.30;   // below ~1/4 the branch structure is invalid
constexpr double kScanHigh = 0.999;

constexpr std::array<double, 16> kReferenceThresholds = {
    0.94888, 0.94551, 0.94582, 0.94789, 0.95073, 0.95384, 0.95697, 0.95997,
    0.96278, 0.96539, 0.96778, 0.96998, 0.97198, 0.97381, 0.97548, 0.97700};

int sign_of(double value) { return value >= 0.0 ? 1 : -1; }

VariantVerdict make_verdict(const Table1Report& report, bool listing) {
  VariantVerdict verdict;
  bool all_match = true;
  for (const auto& row : report.rows) {
    const auto& outcome = listing ? row.listing : row.proposition;
    if (!outcome.has_value() || !row.reference.has_value()) continue;
    verdict.rows_with_reference += 1;
    if (outcome->result.has_value()) {
      verdict.succeeded += 1;
      const double dev = std::abs(outcome->result->delta_n - *row.reference);
      verdict.max_abs_deviation = std::max(verdict.max_abs_deviation, dev);
      if (dev > kTableMatchTolerance) all_match = false;
    } else {
      all_match = false;
    }
  }
  verdict.matches_reference = verdict.rows_with_reference > 0 && all_match;
  return verdict;
}

}  // namespace

std::vector<SignSample> detect_crossings(const std::vector<SignSample>& samples) {
  std::vector<SignSample> crossings;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].sign != samples[i - 1].sign) crossings.push_back(samples[i]);
  }
  return crossings;
}

bool single_negative_crossing(const std::vector<SignSample>& samples) {
  if (samples.empty() || samples.front().sign < 0) return false;
  const auto crossings = detect_crossings(samples);
  return crossings.size() == 1 && crossings.front().sign < 0;
}

IntegralResult integral_I(int n, PinchParameter delta, PsiVariant variant,
                          const QuadratureOptions& quadrature) {
  const Kernel kernel(KernelConfig{n, delta.value(), variant});
  return integrate_kernel(kernel, quadrature);
}

SignScan scan_sign(int n, double grid_step, PsiVariant variant,
                   const QuadratureOptions& quadrature) {
  if (!(grid_step > 0.0) || !(grid_step <= 0.01)) {
    throw std::invalid_argument("scan_sign: grid step must lie in (0, 0.01]");
  }
  SignScan scan;
  for (int i = 0;; ++i) {
    double delta = kScanLow + grid_step * i;
    if (delta > kScanHigh + 1e-12) break;
    delta = std::min(delta, kScanHigh);
    const double value = integral_I(n, PinchParameter(delta), variant, quadrature).value;
    scan.samples.push_back({delta, value, sign_of(value)});
  }
  if (scan.samples.back().delta < kScanHigh - 1e-12) {
    const double value = integral_I(n, PinchParameter(kScanHigh), variant, quadrature).value;
    scan.samples.push_back({kScanHigh, value, sign_of(value)});
  }
  scan.crossings = detect_crossings(scan.samples);
  scan.single_crossing = single_negative_crossing(scan.samples);
  return scan;
}

ThresholdResult find_threshold(int n, double tol, PsiVariant variant, double scan_step,
                               const QuadratureOptions& quadrature) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_threshold: tolerance must be positive");
  const SignScan scan = scan_sign(n, scan_step, variant, quadrature);
  if (scan.samples.front().sign < 0) {
    throw ThresholdError("I(n, delta) already negative at the scan start delta=0.30");
  }

  // First downward crossing realizes the infimum.
  std::size_t first = scan.samples.size();
  for (std::size_t i = 1; i < scan.samples.size(); ++i) {
    if (scan.samples[i].sign < 0 && scan.samples[i - 1].sign >= 0) {
      first = i;
      break;
    }
  }
  if (first == scan.samples.size()) {
    throw ThresholdError("no sign crossing of I(n, delta) on the scan grid (n=" +
                         std::to_string(n) + ", variant=" + to_string(variant) + ")");
  }

  ThresholdResult result;
  result.n = n;
  result.psi_variant = variant;
  result.crossings = scan.crossings;
  result.multiple_crossings = !scan.single_crossing;

  double lo = scan.samples[first - 1].delta;
  double hi = scan.samples[first].delta;
  double value_lo = scan.samples[first - 1].value;
  double value_hi = scan.samples[first].value;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double value = integral_I(n, PinchParameter(mid), variant, quadrature).value;
    if (value < 0.0) {
      hi = mid;
      value_hi = value;
    } else {
      lo = mid;
      value_lo = value;
    }
  }
  result.delta_n = 0.5 * (lo + hi);
  result.bracket_low = lo;
  result.bracket_high = hi;
  result.integral_at_low = value_lo;
  result.integral_at_high = value_hi;
  return result;
}

ThresholdOutcome run_threshold_row(int n, PsiVariant variant, double tol, double scan_step,
                                   const QuadratureOptions& quadrature) {
  ThresholdOutcome outcome;
  try {
    ThresholdResult result = find_threshold(n, tol, variant, scan_step, quadrature);
    outcome.crossings = static_cast<int>(result.crossings.size());
    outcome.single_crossing = !result.multiple_crossings;
    outcome.result = std::move(result);
  } catch (const std::exception& e) {
    outcome.error = e.what();
    outcome.crossings = 0;
    outcome.single_crossing = false;
  }
  return outcome;
}

std::optional<double> table1_reference(int n) {
  if (n < 5 || n > 20) return std::nullopt;
  return kReferenceThresholds[static_cast<std::size_t>(n - 5)];
}

double reference_integral_at_delta_one(int n) {
  return 2.0 * (4.0 - n) / (static_cast<double>(n) * n);
}

Table1Report table1_report(const Table1Options& options) {
  if (options.n_low < 5 || options.n_high < options.n_low) {
    throw std::invalid_argument("table1_report: need 5 <= n_low <= n_high");
  }
  const bool want_listing = options.variants != VariantSelection::Proposition;
  const bool want_proposition = options.variants != VariantSelection::Listing;

  Table1Report report;
  report.options = options;
  const int row_count = options.n_high - options.n_low + 1;
  report.rows.resize(static_cast<std::size_t>(row_count));

  const auto compute_row = [&](int index) {
    const int n = options.n_low + index;
    Table1Row row;
    row.n = n;
    row.reference = table1_reference(n);
    if (want_listing) {
      row.listing = run_threshold_row(n, PsiVariant::Listing, options.bisection_tol,
                                      options.scan_step, options.quadrature);
    }
    if (want_proposition) {
      row.proposition = run_threshold_row(n, PsiVariant::Proposition, options.bisection_tol,
                                          options.scan_step, options.quadrature);
    }
    report.rows[static_cast<std::size_t>(index)] = std::move(row);
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (options.parallel && row_count > 1 && hw > 1) {
    std::atomic<int> next{0};
    const unsigned workers = std::min(hw, static_cast<unsigned>(row_count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < row_count; i = next.fetch_add(1)) {
          compute_row(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  } else {
    for (int i = 0; i < row_count; ++i) compute_row(i);
  }

  report.listing_verdict = make_verdict(report, true);
  report.proposition_verdict = make_verdict(report, false);
  report.all_rows_resolved = true;
  for (const auto& row : report.rows) {
    const bool listing_ok = row.listing.has_value() && row.listing->result.has_value();
    const bool proposition_ok =
        row.proposition.has_value() && row.proposition->result.has_value();
    if (!listing_ok && !proposition_ok) report.all_rows_resolved = false;
  }
  return report;
}

}  // namespace ympinch
