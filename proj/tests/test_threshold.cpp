#include <cmath>
#include <cstring>
#include <stdexcept>
#include <utility>

#include <doctest.h>

#include "ympinch/threshold.hpp"

using namespace ympinch;

namespace {

double wallis(int k) {
  double value = (k % 2 == 0) ? kPi : 2.0;
  for (int m = (k % 2 == 0) ? 2 : 3; m <= k; m += 2) {
    value *= (m - 1.0) / m;
  }
  return value;
}

// Closed form of I(n, 1): the kernel collapses to
//   1/2 + c_psi sin^2 + (n^2/2 - 4n + 15/2) cos^2
// and integrating against sin^(n-1) reduces to Wallis integrals. Under the
// listing variant this gives W(n-1) (8 - 3n)/(n + 1); under the proposition
// variant W(n-1) (2n^2 - 9n + 16)/(2(n + 1)).
double delta_one_closed_form(int n, PsiVariant variant) {
  const double w = wallis(n - 1);
  if (variant == PsiVariant::Listing) {
    return w * (8.0 - 3.0 * n) / (n + 1.0);
  }
  return w * (2.0 * n * n - 9.0 * n + 16.0) / (2.0 * (n + 1.0));
}

}  // namespace

TEST_CASE("I(n, 1) matches the wallis closed form and is negative (listing)") {
  for (int n = 5; n <= 20; ++n) {
    const double computed = integral_I(n, PinchParameter(1.0), PsiVariant::Listing).value;
    CHECK(computed < 0.0);
    CHECK(std::abs(computed - delta_one_closed_form(n, PsiVariant::Listing)) < 1e-8);
    // The quoted reference value 2(4-n)/n^2 shares the sign but not the
    // magnitude; only the sign is asserted.
    CHECK(reference_integral_at_delta_one(n) < 0.0);
  }
  CHECK(std::abs(integral_I(5, PinchParameter(1.0), PsiVariant::Listing).value -
                 (-7.0 * kPi / 16.0)) < 1e-9);
}

TEST_CASE("I(n, 1) is positive under the proposition variant") {
  for (int n : {5, 8, 12, 20}) {
    const double computed = integral_I(n, PinchParameter(1.0), PsiVariant::Proposition).value;
    CHECK(computed > 0.0);
    CHECK(std::abs(computed - delta_one_closed_form(n, PsiVariant::Proposition)) < 1e-8);
  }
}

TEST_CASE("integral brackets the reference threshold at n = 5 (listing)") {
  CHECK(integral_I(5, PinchParameter(0.94888 + 0.002), PsiVariant::Listing).value < 0.0);
  CHECK(integral_I(5, PinchParameter(0.94888 - 0.01), PsiVariant::Listing).value >= 0.0);
}

TEST_CASE("crossing detection on synthetic sign sequences") {
  const auto sample = [](double delta, double value) {
    return SignSample{delta, value, value >= 0.0 ? 1 : -1};
  };
  // Constant sign: no crossings, flagged as not a single crossing.
  std::vector<SignSample> constant = {sample(0.3, 1.0), sample(0.4, 2.0), sample(0.5, 0.5)};
  CHECK(detect_crossings(constant).empty());
  CHECK(!single_negative_crossing(constant));
  // One downward crossing: the expected pattern.
  std::vector<SignSample> single = {sample(0.3, 1.0), sample(0.4, 0.0), sample(0.5, -1.0)};
  CHECK(detect_crossings(single).size() == 1);
  CHECK(single_negative_crossing(single));
  // Down, then back up: flagged.
  std::vector<SignSample> wiggle = {sample(0.3, 1.0), sample(0.4, -1.0), sample(0.5, 1.0)};
  CHECK(detect_crossings(wiggle).size() == 2);
  CHECK(!single_negative_crossing(wiggle));
  // Starts negative: flagged.
  std::vector<SignSample> neg = {sample(0.3, -1.0), sample(0.4, -2.0)};
  CHECK(!single_negative_crossing(neg));
}

TEST_CASE("scan_sign validates its grid step") {
  CHECK_THROWS_AS(scan_sign(5, 0.02, PsiVariant::Listing), std::invalid_argument);
  CHECK_THROWS_AS(scan_sign(5, 0.0, PsiVariant::Listing), std::invalid_argument);
  CHECK_THROWS_AS(scan_sign(5, -1e-3, PsiVariant::Listing), std::invalid_argument);
}

TEST_CASE("scan_sign sees exactly one crossing for n = 5 (listing)") {
  const SignScan scan = scan_sign(5, 1e-3, PsiVariant::Listing);
  CHECK(scan.single_crossing);
  REQUIRE(scan.crossings.size() == 1);
  // Consistent with the reference threshold to within one grid step.
  CHECK(std::abs(scan.crossings.front().delta - 0.94888) <= 1e-3 + 1e-12);
  CHECK(scan.crossings.front().sign == -1);
  CHECK(scan.samples.front().delta == 0.30);
  CHECK(scan.samples.back().delta == 0.999);
}

TEST_CASE("find_threshold matches the reference table entries") {
  struct Case {
    int n;
    double reference;
  };
  for (const Case& c : {Case{5, 0.94888}, Case{10, 0.95384}, Case{20, 0.97700}}) {
    const ThresholdResult result = find_threshold(c.n, 1e-6, PsiVariant::Listing);
    CHECK(std::abs(result.delta_n - c.reference) <= 5e-3);
    CHECK(result.bracket_high - result.bracket_low <= 1e-6);
    CHECK(result.integral_at_high < 0.0);
    CHECK(result.integral_at_low >= 0.0);
    CHECK(!result.multiple_crossings);
    CHECK(result.delta_n > 0.25);
    CHECK(result.delta_n < 1.0);
    CHECK(table1_reference(c.n).has_value());
    CHECK(*table1_reference(c.n) == c.reference);
  }
}

TEST_CASE("find_threshold reports the absence of a crossing (proposition)") {
  CHECK_THROWS_AS(find_threshold(5, 1e-6, PsiVariant::Proposition, 5e-3), ThresholdError);
  const ThresholdOutcome outcome =
      run_threshold_row(5, PsiVariant::Proposition, 1e-6, 5e-3, QuadratureOptions{});
  CHECK(!outcome.result.has_value());
  CHECK(!outcome.error.empty());
  CHECK(outcome.crossings == 0);
}

TEST_CASE("threshold computation is bit-deterministic") {
  const ThresholdResult a = find_threshold(5, 1e-5, PsiVariant::Listing, 5e-3);
  const ThresholdResult b = find_threshold(5, 1e-5, PsiVariant::Listing, 5e-3);
  CHECK(std::memcmp(&a.delta_n, &b.delta_n, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.bracket_low, &b.bracket_low, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.bracket_high, &b.bracket_high, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.integral_at_low, &b.integral_at_low, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.integral_at_high, &b.integral_at_high, sizeof(double)) == 0);
}

TEST_CASE("variant sensitivity equals the coefficient-difference integral") {
  // With the weight held fixed (signs taken from the listing kernel), the two
  // variants differ by exactly integral of dC * sin^2 * v, where
  // dC = (1 - 2(n-1) delta)/2. The weight must be pinned: the variants have
  // different sign sets, so the naive difference of the two reported
  // integrals includes weight switches as well.
  for (const auto& [n, delta] : {std::pair<int, double>{5, 0.95}, {12, 0.7}, {20, 0.99}}) {
    const Kernel listing(KernelConfig{n, delta, PsiVariant::Listing});
    const Kernel proposition(KernelConfig{n, delta, PsiVariant::Proposition});
    const auto weight = [&listing](double rho) {
      return listing.volume_weight(rho, listing.kernel_listing(rho));
    };
    const auto difference = [&](double rho) {
      if (rho <= 0.0 || rho > kPi) return 0.0;
      return (listing.kernel_listing(rho) - proposition.kernel_listing(rho)) * weight(rho);
    };
    const auto coefficient_integrand = [&](double rho) {
      if (rho <= 0.0 || rho > kPi) return 0.0;
      const double s = std::sin(rho);
      const double d_coeff = (1.0 - 2.0 * (n - 1.0) * delta) / 2.0;
      return d_coeff * s * s * weight(rho);
    };
    std::vector<double> pts(listing.breakpoints().begin(), listing.breakpoints().end());
    for (double r : find_sign_changes(listing, 1e-9, kPi - 1e-9)) pts.push_back(r);
    const double lhs = integrate_function(difference, 0.0, kPi, pts, 1e-10).value;
    const double rhs = integrate_function(coefficient_integrand, 0.0, kPi, pts, 1e-10).value;
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("table1_report isolates per-row variant failures") {
  Table1Options options;
  options.n_low = 5;
  options.n_high = 6;
  options.variants = VariantSelection::Both;
  options.bisection_tol = 1e-4;
  options.scan_step = 5e-3;
  options.parallel = false;
  const Table1Report report = table1_report(options);
  REQUIRE(report.rows.size() == 2);
  for (const Table1Row& row : report.rows) {
    REQUIRE(row.listing.has_value());
    REQUIRE(row.proposition.has_value());
    CHECK(row.listing->result.has_value());
    CHECK(!row.proposition->result.has_value());  // no crossing exists
    CHECK(!row.proposition->error.empty());
    CHECK(row.reference.has_value());
  }
  CHECK(report.all_rows_resolved);
  CHECK(report.listing_verdict.matches_reference);
  CHECK(!report.proposition_verdict.matches_reference);
  CHECK(report.listing_verdict.max_abs_deviation <= kTableMatchTolerance);
}

TEST_CASE("parallel and serial table runs agree bitwise") {
  Table1Options options;
  options.n_low = 5;
  options.n_high = 7;
  options.variants = VariantSelection::Listing;
  options.bisection_tol = 1e-4;
  options.scan_step = 5e-3;
  options.parallel = true;
  const Table1Report parallel = table1_report(options);
  options.parallel = false;
  const Table1Report serial = table1_report(options);
  REQUIRE(parallel.rows.size() == serial.rows.size());
  for (std::size_t i = 0; i < parallel.rows.size(); ++i) {
    const double a = parallel.rows[i].listing->result->delta_n;
    const double b = serial.rows[i].listing->result->delta_n;
    CHECK(std::memcmp(&a, &b, sizeof(double)) == 0);
  }
}

TEST_CASE("table1_reference covers exactly 5..20") {
  CHECK(!table1_reference(4).has_value());
  CHECK(!table1_reference(21).has_value());
  CHECK(table1_reference(5).value() == 0.94888);
  CHECK(table1_reference(6).value() == 0.94551);
  CHECK(table1_reference(20).value() == 0.97700);
}
