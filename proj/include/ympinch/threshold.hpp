#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ympinch/quadrature.hpp"

namespace ympinch {

class ThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One grid sample of delta -> I(n, delta). `sign` is +1 when the integral is
/// nonnegative, -1 otherwise.
struct SignSample {
  double delta = 0.0;
  double value = 0.0;
  int sign = 0;
};

/// Entries of `samples` whose sign differs from the previous sample.
std::vector<SignSample> detect_crossings(const std::vector<SignSample>& samples);

/// True when the sign pattern is "nonnegative, then negative": exactly one
/// crossing, downward.
bool single_negative_crossing(const std::vector<SignSample>& samples);

struct SignScan {
  std::vector<SignSample> samples;
  std::vector<SignSample> crossings;
  bool single_crossing = false;
};

/// I(n, delta) = integral over (0, pi) of kernel * volume weight. The
/// |S^(n-1)| surface factor is deliberately dropped: it is strictly positive
/// and only the integral's sign enters the threshold definition.
IntegralResult integral_I(int n, PinchParameter delta, PsiVariant variant,
                          const QuadratureOptions& quadrature = {});

/// Sign of I(n, delta) over the grid {0.30, 0.30 + step, ..., 0.999} (the
/// right endpoint is always included). grid_step must lie in (0, 0.01].
SignScan scan_sign(int n, double grid_step, PsiVariant variant,
                   const QuadratureOptions& quadrature = {});

struct ThresholdResult {
  int n = 0;
  double delta_n = 0.0;  ///< midpoint of the final bisection bracket
  double bracket_low = 0.0;   ///< I(n, bracket_low) >= 0
  double bracket_high = 0.0;  ///< I(n, bracket_high) < 0
  std::vector<SignSample> crossings;  ///< sign flips seen by the scan
  PsiVariant psi_variant = PsiVariant::Listing;
  double integral_at_low = 0.0;
  double integral_at_high = 0.0;
  /// Set when the scan saw more than one sign flip; delta_n then refines the
  /// first downward crossing (the infimum).
  bool multiple_crossings = false;
};

/// Smallest delta where I(n, delta) turns negative: scan, then bisection
/// between the last nonnegative and first negative grid points until the
/// bracket width is <= tol. Throws ThresholdError when the scan never sees a
/// negative value (or starts negative).
ThresholdResult find_threshold(int n, double tol, PsiVariant variant,
                               double scan_step = 1e-3,
                               const QuadratureOptions& quadrature = {});

/// Non-throwing wrapper around find_threshold for report assembly.
struct ThresholdOutcome {
  std::optional<ThresholdResult> result;
  std::string error;       ///< empty on success
  int crossings = 0;       ///< sign flips seen by the scan (also on failure)
  bool single_crossing = false;
};
ThresholdOutcome run_threshold_row(int n, PsiVariant variant, double tol,
                                   double scan_step, const QuadratureOptions& quadrature);

enum class VariantSelection { Listing, Proposition, Both };

/// Reference thresholds for dimensions 5..20, 5 decimals.
std::optional<double> table1_reference(int n);

/// Reference value 2(4-n)/n^2 quoted for the delta = 1 integral. The computed
/// I(n, 1) is reported next to it; the two are not asserted equal (they agree
/// in sign but follow different normalization bookkeeping).
double reference_integral_at_delta_one(int n);

/// Per-entry tolerance for calling a computed threshold a match.
inline constexpr double kTableMatchTolerance = 5e-3;

struct Table1Options {
  int n_low = 5;
  int n_high = 20;
  VariantSelection variants = VariantSelection::Both;
  double bisection_tol = 1e-6;
  double scan_step = 1e-3;
  QuadratureOptions quadrature;
  bool parallel = true;  ///< rows are independent; results are merged by n
};

struct Table1Row {
  int n = 0;
  std::optional<ThresholdOutcome> listing;      ///< present when requested
  std::optional<ThresholdOutcome> proposition;  ///< present when requested
  std::optional<double> reference;
};

struct VariantVerdict {
  int rows_with_reference = 0;
  int succeeded = 0;  ///< rows (with reference) that produced a threshold
  double max_abs_deviation = 0.0;  ///< over succeeded rows with reference
  bool matches_reference = false;  ///< all reference rows within kTableMatchTolerance
};

struct Table1Report {
  Table1Options options;
  std::vector<Table1Row> rows;  ///< ascending n
  VariantVerdict listing_verdict;
  VariantVerdict proposition_verdict;
  /// True when every row produced a threshold under at least one requested
  /// variant; rows record per-variant failures without aborting the run.
  bool all_rows_resolved = false;
};

Table1Report table1_report(const Table1Options& options = {});

}  // namespace ympinch
