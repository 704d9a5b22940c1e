#include "ympinch/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ympinch {

namespace {

using nlohmann::json;

constexpr const char* kTable1Header =
    "n,delta_n_listing,delta_n_proposition,table1_value,deviation_listing,"
    "deviation_proposition,crossings";

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

json json_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

json outcome_to_json(const ThresholdOutcome& outcome) {
  json j;
  j["crossings"] = outcome.crossings;
  j["single_crossing"] = outcome.single_crossing;
  if (outcome.result.has_value()) {
    const ThresholdResult& r = *outcome.result;
    j["delta_n"] = r.delta_n;
    j["bracket"] = {r.bracket_low, r.bracket_high};
    j["integral_at_bracket"] = {r.integral_at_low, r.integral_at_high};
    j["multiple_crossings"] = r.multiple_crossings;
    json flips = json::array();
    for (const SignSample& c : r.crossings) {
      flips.push_back({{"delta", c.delta}, {"sign", c.sign}});
    }
    j["scan_crossings"] = flips;
    j["error"] = nullptr;
  } else {
    j["delta_n"] = nullptr;
    j["error"] = outcome.error;
  }
  return j;
}

std::string variant_selection_name(VariantSelection v) {
  switch (v) {
    case VariantSelection::Listing: return "listing";
    case VariantSelection::Proposition: return "proposition";
    default: return "both";
  }
}

json verdict_to_json(const VariantVerdict& v) {
  return json{{"rows_with_reference", v.rows_with_reference},
              {"succeeded", v.succeeded},
              {"max_abs_deviation", v.rows_with_reference > 0 && v.succeeded > 0
                                        ? json(v.max_abs_deviation)
                                        : json(nullptr)},
              {"matches_reference", v.matches_reference}};
}

}  // namespace

std::string format_sig10(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string format_fixed5(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5f", x);
  return buf;
}

std::string format_fixed5_signed(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+.5f", x);
  return buf;
}

std::string format_full(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<Table1CsvRow> to_csv_rows(const Table1Report& report) {
  std::vector<Table1CsvRow> rows;
  rows.reserve(report.rows.size());
  for (const Table1Row& row : report.rows) {
    Table1CsvRow out;
    out.n = row.n;
    out.reference = row.reference.value_or(nan_value());
    out.delta_listing = row.listing.has_value() && row.listing->result.has_value()
                            ? row.listing->result->delta_n
                            : nan_value();
    out.delta_proposition =
        row.proposition.has_value() && row.proposition->result.has_value()
            ? row.proposition->result->delta_n
            : nan_value();
    out.deviation_listing = out.delta_listing - out.reference;
    out.deviation_proposition = out.delta_proposition - out.reference;
    if (row.listing.has_value() && row.proposition.has_value()) {
      out.crossings = std::to_string(row.listing->crossings) + "/" +
                      std::to_string(row.proposition->crossings);
    } else if (row.listing.has_value()) {
      out.crossings = std::to_string(row.listing->crossings);
    } else if (row.proposition.has_value()) {
      out.crossings = std::to_string(row.proposition->crossings);
    } else {
      out.crossings = "0";
    }
    rows.push_back(std::move(out));
  }
  return rows;
}

void write_table1_csv(std::ostream& out, const std::vector<Table1CsvRow>& rows) {
  out << kTable1Header << "\n";
  for (const Table1CsvRow& row : rows) {
    out << row.n << ',' << format_sig10(row.delta_listing) << ','
        << format_sig10(row.delta_proposition) << ','
        << format_fixed5(row.reference) << ','
        << format_fixed5_signed(row.deviation_listing) << ','
        << format_fixed5_signed(row.deviation_proposition) << ',' << row.crossings << "\n";
  }
}

void write_table1_csv(std::ostream& out, const Table1Report& report) {
  write_table1_csv(out, to_csv_rows(report));
}

std::vector<Table1CsvRow> parse_table1_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTable1Header) {
    throw std::runtime_error("table1 csv: missing or unexpected header");
  }
  std::vector<Table1CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) {
      throw std::runtime_error("table1 csv: expected 7 fields, got " +
                               std::to_string(fields.size()));
    }
    Table1CsvRow row;
    row.n = std::stoi(fields[0]);
    row.delta_listing = std::strtod(fields[1].c_str(), nullptr);
    row.delta_proposition = std::strtod(fields[2].c_str(), nullptr);
    row.reference = std::strtod(fields[3].c_str(), nullptr);
    row.deviation_listing = std::strtod(fields[4].c_str(), nullptr);
    row.deviation_proposition = std::strtod(fields[5].c_str(), nullptr);
    row.crossings = fields[6];
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_table1_json(std::ostream& out, const Table1Report& report) {
  json j;
  j["report_type"] = "table1";
  j["n_low"] = report.options.n_low;
  j["n_high"] = report.options.n_high;
  j["variants"] = variant_selection_name(report.options.variants);
  j["bisection_tol"] = report.options.bisection_tol;
  j["scan_step"] = report.options.scan_step;
  j["quad_tol"] = report.options.quadrature.tol;
  j["all_rows_resolved"] = report.all_rows_resolved;
  json rows = json::array();
  for (const Table1Row& row : report.rows) {
    json r;
    r["n"] = row.n;
    r["reference"] = row.reference.has_value() ? json(*row.reference) : json(nullptr);
    r["listing"] = row.listing.has_value() ? outcome_to_json(*row.listing) : json(nullptr);
    r["proposition"] =
        row.proposition.has_value() ? outcome_to_json(*row.proposition) : json(nullptr);
    const auto deviation = [&](const std::optional<ThresholdOutcome>& outcome) -> json {
      if (!outcome.has_value() || !outcome->result.has_value() || !row.reference.has_value()) {
        return nullptr;
      }
      return outcome->result->delta_n - *row.reference;
    };
    r["deviation_listing"] = deviation(row.listing);
    r["deviation_proposition"] = deviation(row.proposition);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["verdicts"] = {{"listing", verdict_to_json(report.listing_verdict)},
                   {"proposition", verdict_to_json(report.proposition_verdict)}};
  out << j.dump(2) << "\n";
}

CurveReport make_curve_report(const KernelConfig& config, int samples) {
  if (samples < 1) throw std::invalid_argument("curve: need at least one sample");
  const Kernel kernel(config);
  CurveReport report;
  report.config = config;
  report.requested_samples = samples;
  report.rho_delta = kernel.rho_delta();
  report.rho_delta_residual =
      rho_delta_residual(PinchParameter(config.delta), kernel.rho_delta());

  const auto sample_at = [&kernel](double rho, bool is_breakpoint) {
    CurveSample s;
    s.rho = rho;
    s.kernel = kernel.kernel_listing(rho);
    s.weight = kernel.volume_weight(rho, s.kernel);
    s.integrand = s.kernel * s.weight;
    s.is_breakpoint = is_breakpoint;
    return s;
  };

  for (int i = 0; i < samples; ++i) {
    const double rho = kPi * (i + 1.0) / (samples + 1.0);
    report.samples.push_back(sample_at(rho, false));
  }
  for (double bp : kernel.breakpoints()) {
    report.samples.push_back(sample_at(bp, true));
  }
  std::stable_sort(report.samples.begin(), report.samples.end(),
                   [](const CurveSample& a, const CurveSample& b) { return a.rho < b.rho; });
  return report;
}

void write_curve_csv(std::ostream& out, const CurveReport& report) {
  out << "rho,kernel_phi,volume_weight,integrand,is_breakpoint\n";
  for (const CurveSample& s : report.samples) {
    out << format_full(s.rho) << ',' << format_full(s.kernel) << ',' << format_full(s.weight)
        << ',' << format_full(s.integrand) << ',' << (s.is_breakpoint ? 1 : 0) << "\n";
  }
}

void write_curve_json(std::ostream& out, const CurveReport& report) {
  const Kernel kernel(report.config);
  json j;
  j["report_type"] = "curve";
  j["n"] = report.config.n;
  j["delta"] = report.config.delta;
  j["psi_variant"] = to_string(report.config.psi_variant);
  j["requested_samples"] = report.requested_samples;
  j["rho_delta"] = report.rho_delta;
  j["rho_delta_residual"] = report.rho_delta_residual;
  const auto bps = kernel.breakpoints();
  j["breakpoints"] = {bps[0], bps[1], bps[2]};
  json samples = json::array();
  for (const CurveSample& s : report.samples) {
    samples.push_back({{"rho", s.rho},
                       {"kernel", s.kernel},
                       {"weight", s.weight},
                       {"integrand", s.integrand},
                       {"is_breakpoint", s.is_breakpoint}});
  }
  j["samples"] = std::move(samples);
  out << j.dump(2) << "\n";
}

IntegralReport make_integral_report(const KernelConfig& config,
                                    const QuadratureOptions& quadrature,
                                    bool include_sphere_factor) {
  const Kernel kernel(config);
  IntegralReport report;
  report.config = config;
  report.result = integrate_kernel(kernel, quadrature);
  report.include_sphere_factor = include_sphere_factor;
  report.sphere_factor = unit_sphere_area(config.n);
  report.value =
      include_sphere_factor ? report.result.value * report.sphere_factor : report.result.value;
  return report;
}

void write_integral_csv(std::ostream& out, const IntegralReport& report) {
  out << "n,delta,psi_variant,value,error_estimate,subintervals,sign_change_points,"
         "include_sphere_factor,sphere_factor\n";
  out << report.config.n << ',' << format_sig10(report.config.delta) << ','
      << to_string(report.config.psi_variant) << ',' << format_full(report.value) << ','
      << format_full(report.result.error_estimate) << ',' << report.result.subintervals << ',';
  for (std::size_t i = 0; i < report.result.sign_change_points.size(); ++i) {
    if (i > 0) out << ';';
    out << format_full(report.result.sign_change_points[i]);
  }
  out << ',' << (report.include_sphere_factor ? 1 : 0) << ','
      << format_full(report.sphere_factor) << "\n";
}

void write_integral_json(std::ostream& out, const IntegralReport& report) {
  json j;
  j["report_type"] = "integral";
  j["n"] = report.config.n;
  j["delta"] = report.config.delta;
  j["psi_variant"] = to_string(report.config.psi_variant);
  j["value"] = json_or_null(report.value);
  j["error_estimate"] = report.result.error_estimate;
  j["subintervals"] = report.result.subintervals;
  j["sign_change_points"] = report.result.sign_change_points;
  j["include_sphere_factor"] = report.include_sphere_factor;
  j["sphere_factor"] = report.sphere_factor;
  out << j.dump(2) << "\n";
}

void write_check_text(std::ostream& out, const CheckReport& report) {
  for (const CheckItem& item : report.items) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "[%s] %-24s observed=%-14.6g limit=%-12.6g %s",
                  item.passed ? "PASS" : "FAIL", item.name.c_str(), item.observed, item.limit,
                  item.detail.c_str());
    out << buf << "\n";
  }
  out << (report.all_passed() ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
}

void write_check_json(std::ostream& out, const CheckReport& report) {
  json j;
  j["report_type"] = "check";
  j["all_passed"] = report.all_passed();
  json items = json::array();
  for (const CheckItem& item : report.items) {
    items.push_back({{"name", item.name},
                     {"passed", item.passed},
                     {"observed", json_or_null(item.observed)},
                     {"limit", item.limit},
                     {"detail", item.detail}});
  }
  j["items"] = std::move(items);
  out << j.dump(2) << "\n";
}

}  // namespace ympinch
