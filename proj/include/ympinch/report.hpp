#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ympinch/checks.hpp"
#include "ympinch/threshold.hpp"

namespace ympinch {

enum class OutputFormat { Csv, Json };

/// Flattened table row exactly as serialized; the parse target of the CSV
/// round-trip contract. Absent values are NaN.
struct Table1CsvRow {
  int n = 0;
  double delta_listing = 0.0;
  double delta_proposition = 0.0;
  double reference = 0.0;
  double deviation_listing = 0.0;
  double deviation_proposition = 0.0;
  std::string crossings;  ///< "k" for one variant, "kl/kp" for both
};

std::vector<Table1CsvRow> to_csv_rows(const Table1Report& report);

void write_table1_csv(std::ostream& out, const std::vector<Table1CsvRow>& rows);
void write_table1_csv(std::ostream& out, const Table1Report& report);
std::vector<Table1CsvRow> parse_table1_csv(std::istream& in);

void write_table1_json(std::ostream& out, const Table1Report& report);

struct CurveSample {
  double rho = 0.0;
  double kernel = 0.0;
  double weight = 0.0;
  double integrand = 0.0;
  bool is_breakpoint = false;
};

struct CurveReport {
  KernelConfig config;
  int requested_samples = 0;
  double rho_delta = 0.0;
  double rho_delta_residual = 0.0;
  std::vector<CurveSample> samples;  ///< requested_samples grid rows + 3 breakpoint rows
};

/// Uniform interior grid rho_i = pi (i+1)/(samples+1) plus the three exact
/// breakpoints flagged as such, sorted by rho.
CurveReport make_curve_report(const KernelConfig& config, int samples);

void write_curve_csv(std::ostream& out, const CurveReport& report);
void write_curve_json(std::ostream& out, const CurveReport& report);

struct IntegralReport {
  KernelConfig config;
  IntegralResult result;            ///< raw, sign-only normalization
  bool include_sphere_factor = false;
  double sphere_factor = 0.0;       ///< |S^(n-1)|, informational
  double value = 0.0;               ///< result.value, scaled when requested
};

IntegralReport make_integral_report(const KernelConfig& config,
                                    const QuadratureOptions& quadrature,
                                    bool include_sphere_factor);

void write_integral_csv(std::ostream& out, const IntegralReport& report);
void write_integral_json(std::ostream& out, const IntegralReport& report);

void write_check_text(std::ostream& out, const CheckReport& report);
void write_check_json(std::ostream& out, const CheckReport& report);

/// Shortest exact formatting helpers used by the CSV writers; NaN prints as
/// "nan" in every column.
std::string format_sig10(double x);
std::string format_fixed5(double x);
std::string format_fixed5_signed(double x);
std::string format_full(double x);  ///< %.17g round-trip exact

}  // namespace ympinch
