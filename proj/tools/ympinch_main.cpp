// Command-line surface: reproduce the threshold table, sample kernel curves,
// evaluate single integrals, and run the validation matrix.
//
// Exit codes: 0 success, 2 usage error, 3 computation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ympinch/report.hpp"

namespace {

using namespace ympinch;

struct NRange {
  int low = 5;
  int high = 20;
};

// "7" or "5..20", bounds clamped to the supported [5, 64].
NRange parse_n_range(const std::string& text) {
  NRange range;
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      range.low = range.high = std::stoi(text);
    } else {
      range.low = std::stoi(text.substr(0, dots));
      range.high = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("--n", "expected N or LO..HI, got '" + text + "'");
  }
  if (range.low < 5 || range.high > 64 || range.low > range.high) {
    throw CLI::ValidationError("--n", "range must lie within [5, 64]");
  }
  return range;
}

PsiVariant parse_variant(const std::string& name) {
  if (name == "listing") return PsiVariant::Listing;
  if (name == "proposition") return PsiVariant::Proposition;
  throw CLI::ValidationError("--variant", "expected listing or proposition");
}

VariantSelection parse_selection(const std::string& name) {
  if (name == "listing") return VariantSelection::Listing;
  if (name == "proposition") return VariantSelection::Proposition;
  if (name == "both") return VariantSelection::Both;
  throw CLI::ValidationError("--variant", "expected listing, proposition or both");
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw CLI::ValidationError("--format", "expected csv or json");
}

// Serializes through a string first so a failed computation never leaves a
// half-written file behind.
int emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file " << out_path << "\n";
    return 3;
  }
  file << body;
  return file.good() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-pinching stability thresholds for Yang-Mills connections"};
  app.require_subcommand(1);

  std::string n_text = "5..20";
  std::string table_variant = "both";
  std::string single_variant = "listing";
  std::string format_text = "csv";
  std::string out_path;
  double tol = 1e-6;
  double scan_step = 1e-3;
  double quad_tol = 1e-10;
  double scan_resolution = 1e-3;
  double delta = 1.0;
  int samples = 512;
  bool include_sphere = false;
  bool serial = false;
  bool skip_thresholds = false;
  double inject_psi = 0.0;
  bool tol_given = false;

  auto* table1 = app.add_subcommand(
      "table1", "Thresholds delta(n) against the reference table");
  table1->add_option("--n", n_text, "dimension or range, e.g. 7 or 5..20")
      ->capture_default_str();
  table1->add_option("--variant", table_variant, "listing, proposition or both")
      ->capture_default_str();
  table1->add_option("--tol", tol, "bisection bracket width")
      ->check(CLI::Range(1e-10, 1e-2))
      ->capture_default_str();
  table1->add_option("--scan-step", scan_step, "delta grid step of the sign scan")
      ->check(CLI::Range(1e-6, 0.01))
      ->capture_default_str();
  table1->add_option("--quad-tol", quad_tol, "absolute quadrature tolerance")
      ->check(CLI::Range(1e-14, 1e-2))
      ->capture_default_str();
  table1->add_option("--scan-resolution", scan_resolution,
                     "rho grid step of the kernel sign-change scan")
      ->check(CLI::Range(1e-6, 0.1))
      ->capture_default_str();
  table1->add_option("--format", format_text, "csv or json")->capture_default_str();
  table1->add_option("--out", out_path, "output path (default stdout)");
  table1->add_flag("--serial", serial, "disable row-level parallelism");

  auto* curve = app.add_subcommand(
      "curve", "Sample (rho, kernel, weight, product) along (0, pi)");
  curve->add_option("--n", n_text, "dimension")->required();
  curve->add_option("--delta", delta, "pinching constant in (1/4, 1]")->required();
  curve->add_option("--variant", single_variant, "listing or proposition")
      ->capture_default_str();
  curve->add_option("--samples", samples, "uniform grid size (plus 3 breakpoint rows)")
      ->check(CLI::Range(1, 10000000))
      ->capture_default_str();
  curve->add_option("--format", format_text, "csv or json")->capture_default_str();
  curve->add_option("--out", out_path, "output path (default stdout)");

  auto* integral = app.add_subcommand(
      "integral", "Evaluate the stability integral I(n, delta)");
  integral->add_option("--n", n_text, "dimension")->required();
  integral->add_option("--delta", delta, "pinching constant in (1/4, 1]")->required();
  integral->add_option("--variant", single_variant, "listing or proposition")
      ->capture_default_str();
  integral->add_option("--tol", quad_tol, "absolute quadrature tolerance")
      ->check(CLI::Range(1e-10, 1e-2))
      ->capture_default_str();
  integral->add_option("--scan-resolution", scan_resolution,
                       "rho grid step of the kernel sign-change scan")
      ->check(CLI::Range(1e-6, 0.1))
      ->capture_default_str();
  integral->add_flag("--include-sphere-factor", include_sphere,
                     "multiply by |S^(n-1)| (sign-only normalization otherwise)");
  integral->add_option("--format", format_text, "csv or json")->capture_default_str();
  integral->add_option("--out", out_path, "output path (default stdout)");

  auto* check = app.add_subcommand("check", "Run the validation matrix");
  check->add_option("--tol", tol, "override tolerance-parameterized checks")
      ->check(CLI::Range(1e-10, 1e-2))
      ->each([&tol_given](const std::string&) { tol_given = true; });
  check->add_flag("--skip-thresholds", skip_thresholds, "skip the threshold certificates");
  check->add_option("--inject-psi-perturbation", inject_psi,
                    "perturb the listing path's sin^2 coefficient (diagnostic; "
                    "nonzero values must fail the dual-path check)");
  check->add_option("--out", out_path, "also write the matrix as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const OutputFormat format = parse_format(format_text);
    std::ostringstream body;

    if (table1->parsed()) {
      const NRange range = parse_n_range(n_text);
      Table1Options options;
      options.n_low = range.low;
      options.n_high = range.high;
      options.variants = parse_selection(table_variant);
      options.bisection_tol = tol;
      options.scan_step = scan_step;
      options.quadrature.tol = quad_tol;
      options.quadrature.scan_resolution = scan_resolution;
      options.parallel = !serial;
      const Table1Report report = table1_report(options);
      if (format == OutputFormat::Csv) {
        write_table1_csv(body, report);
      } else {
        write_table1_json(body, report);
      }
      const int rc = emit(body.str(), out_path);
      if (rc != 0) return rc;
      if (!report.all_rows_resolved) {
        std::cerr << "error: some rows produced no threshold under any requested variant\n";
        return 3;
      }
      return 0;
    }

    if (curve->parsed()) {
      const NRange range = parse_n_range(n_text);
      if (range.low != range.high) {
        throw CLI::ValidationError("--n", "curve expects a single dimension");
      }
      const KernelConfig config{range.low, delta, parse_variant(single_variant)};
      const CurveReport report = make_curve_report(config, samples);
      if (format == OutputFormat::Csv) {
        write_curve_csv(body, report);
      } else {
        write_curve_json(body, report);
      }
      return emit(body.str(), out_path);
    }

    if (integral->parsed()) {
      const NRange range = parse_n_range(n_text);
      if (range.low != range.high) {
        throw CLI::ValidationError("--n", "integral expects a single dimension");
      }
      const KernelConfig config{range.low, delta, parse_variant(single_variant)};
      QuadratureOptions quadrature;
      quadrature.tol = quad_tol;
      quadrature.scan_resolution = scan_resolution;
      const IntegralReport report = make_integral_report(config, quadrature, include_sphere);
      if (format == OutputFormat::Csv) {
        write_integral_csv(body, report);
      } else {
        write_integral_json(body, report);
      }
      return emit(body.str(), out_path);
    }

    // check
    CheckOptions options;
    if (tol_given) options.tol = tol;
    options.psi_perturbation = inject_psi;
    options.skip_thresholds = skip_thresholds;
    const CheckReport report = run_checks(options);
    write_check_text(std::cout, report);
    if (!out_path.empty()) {
      std::ostringstream json_body;
      write_check_json(json_body, report);
      const int rc = emit(json_body.str(), out_path);
      if (rc != 0) return rc;
    }
    return report.all_passed() ? 0 : 3;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
