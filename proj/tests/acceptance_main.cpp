// Acceptance suite: exercises the full pipeline end to end (through the CLI
// where the contract is a CLI behavior) and prints one PASS/FAIL line per
// criterion. Exit code is the number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ympinch/checks.hpp"
#include "ympinch/report.hpp"

using namespace ympinch;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report_line(int index, const std::string& name, bool passed, const std::string& detail) {
  std::cout << "[" << index << "/9] " << (passed ? "PASS" : "FAIL") << " " << name << ": "
            << detail << "\n";
  std::cout.flush();
  if (!passed) ++g_failures;
}

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -2;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double wallis(int k) {
  double value = (k % 2 == 0) ? kPi : 2.0;
  for (int m = (k % 2 == 0) ? 2 : 3; m <= k; m += 2) {
    value *= (m - 1.0) / m;
  }
  return value;
}

int listing_crossings(const std::string& field) {
  // "k" or "k_listing/k_proposition"
  return std::atoi(field.c_str());
}

struct VariantMatch {
  bool all_present = true;
  bool all_within = true;
  double max_abs_dev = 0.0;
};

VariantMatch evaluate_variant(const std::vector<Table1CsvRow>& rows, bool listing) {
  VariantMatch match;
  for (const Table1CsvRow& row : rows) {
    const double delta = listing ? row.delta_listing : row.delta_proposition;
    const auto reference = table1_reference(row.n);
    if (!reference.has_value()) continue;
    if (std::isnan(delta)) {
      match.all_present = false;
      match.all_within = false;
      continue;
    }
    const double dev = std::abs(delta - *reference);
    match.max_abs_dev = std::max(match.max_abs_dev, dev);
    if (dev > kTableMatchTolerance) match.all_within = false;
  }
  return match;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }
  if (cli.empty()) {
    if (const char* env = std::getenv("YMPINCH_CLI")) cli = env;
  }
  if (cli.empty() || !fs::exists(cli)) {
    std::cerr << "acceptance: pass --cli <path to the ympinch binary>\n";
    return 99;
  }

  const fs::path out_dir = fs::path("acceptance_out");
  fs::create_directories(out_dir);
  const fs::path csv_a = out_dir / "table_both_run1.csv";
  const fs::path csv_b = out_dir / "table_both_run2.csv";

  // ---- criterion 1: table reproduction through the CLI, under 60 s --------
  std::vector<Table1CsvRow> rows;
  bool csv_a_ok = false;
  {
    const std::string command =
        "\"" + cli + "\" table1 --n 5..20 --variant both --out " + csv_a.string();
    const auto start = std::chrono::steady_clock::now();
    const int rc = run_command(command);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool passed = rc == 0 && elapsed < 60.0;
    std::string detail;
    if (rc != 0) {
      detail = "cli exited with code " + std::to_string(rc);
    } else {
      std::ifstream in(csv_a);
      rows = parse_table1_csv(in);
      csv_a_ok = true;
      const VariantMatch listing = evaluate_variant(rows, true);
      const VariantMatch proposition = evaluate_variant(rows, false);
      char buf[256];
      // Qualitative shape of the matching variant: dip from n=5 to n=6,
      // monotone increase for n >= 7.
      const auto shape_holds = [&rows](bool use_listing) {
        bool ok = rows.size() == 16;
        for (std::size_t i = 0; i + 1 < rows.size() && ok; ++i) {
          const double cur = use_listing ? rows[i].delta_listing : rows[i].delta_proposition;
          const double nxt =
              use_listing ? rows[i + 1].delta_listing : rows[i + 1].delta_proposition;
          if (rows[i].n == 5) ok = ok && nxt < cur;
          if (rows[i].n >= 7) ok = ok && nxt > cur;
        }
        return ok;
      };
      if (listing.all_present && listing.all_within) {
        passed = passed && rows.size() == 16 && shape_holds(true);
        std::snprintf(buf, sizeof(buf),
                      "listing variant matches all 16 rows, max|dev|=%.2e (<=5e-3), "
                      "shape (dip at 6, rising from 7) %s, %.1fs (<60s)",
                      listing.max_abs_dev, shape_holds(true) ? "holds" : "BROKEN", elapsed);
        detail = buf;
      } else if (proposition.all_present && proposition.all_within) {
        std::snprintf(buf, sizeof(buf),
                      "proposition variant matches all 16 rows, max|dev|=%.2e, %.1fs",
                      proposition.max_abs_dev, elapsed);
        detail = buf;
        passed = passed && rows.size() == 16;
      } else {
        // Fallback path: emit the structured discrepancy report and check the
        // qualitative shape instead.
        const fs::path json_path = out_dir / "table_discrepancy.json";
        run_command("\"" + cli + "\" table1 --n 5..20 --variant both --format json --out " +
                    json_path.string());
        bool fallback = rows.size() == 16;
        for (const Table1CsvRow& row : rows) {
          fallback = fallback && !std::isnan(row.delta_listing) &&
                     row.delta_listing > 0.90 && row.delta_listing < 0.999 &&
                     listing_crossings(row.crossings) == 1;
        }
        for (std::size_t i = 0; i + 1 < rows.size() && fallback; ++i) {
          const bool increasing = rows[i + 1].delta_listing > rows[i].delta_listing;
          if (rows[i].n == 5) fallback = fallback && !increasing;  // dip at n=6
          if (rows[i].n >= 7) fallback = fallback && increasing;
        }
        detail = "neither variant matched; discrepancy report written to " +
                 json_path.string() + (fallback ? "; fallback shape criteria hold"
                                                : "; fallback shape criteria FAILED");
        passed = passed && fallback;
      }
    }
    report_line(1, "table reproduction via cli", passed, detail);
  }

  // ---- criterion 2: threshold certificates for every row ------------------
  {
    Table1Options options;
    options.variants = VariantSelection::Listing;
    options.bisection_tol = 1e-6;
    const Table1Report table = table1_report(options);
    bool passed = true;
    std::string detail;
    double min_margin = std::numeric_limits<double>::infinity();
    for (const Table1Row& row : table.rows) {
      if (!row.listing.has_value() || !row.listing->result.has_value()) {
        passed = false;
        detail += "n=" + std::to_string(row.n) + " produced no threshold; ";
        continue;
      }
      const ThresholdResult& r = *row.listing->result;
      if (r.bracket_high - r.bracket_low > 1e-6) {
        passed = false;
        detail += "n=" + std::to_string(row.n) + " bracket too wide; ";
      }
      const double above =
          integral_I(row.n, PinchParameter(r.delta_n + 1e-3), PsiVariant::Listing).value;
      const double below =
          integral_I(row.n, PinchParameter(r.delta_n - 1e-3), PsiVariant::Listing).value;
      if (!(above < 0.0) || !(below >= 0.0)) {
        passed = false;
        detail += "n=" + std::to_string(row.n) + " certificate signs wrong; ";
      }
      min_margin = std::min({min_margin, std::abs(above), std::abs(below)});
      // Cross-process agreement with the CSV the CLI wrote.
      if (csv_a_ok) {
        const double csv_delta = rows[static_cast<std::size_t>(row.n - 5)].delta_listing;
        if (std::abs(csv_delta - r.delta_n) > 1e-9) {
          passed = false;
          detail += "n=" + std::to_string(row.n) + " cli/library mismatch; ";
        }
      }
    }
    if (passed) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "I(delta_n+-1e-3) signs hold for n=5..20, min margin %.3e", min_margin);
      detail = buf;
    }
    report_line(2, "threshold certificates", passed, detail);
  }

  // ---- criterion 3: delta = 1 sign check -----------------------------------
  {
    bool passed = true;
    double max_closed_dev = 0.0;
    double max_quoted_ratio = 0.0;
    for (int n = 5; n <= 20; ++n) {
      const double computed = integral_I(n, PinchParameter(1.0), PsiVariant::Listing).value;
      if (!(computed < 0.0)) passed = false;
      const double closed = wallis(n - 1) * (8.0 - 3.0 * n) / (n + 1.0);
      max_closed_dev = std::max(max_closed_dev, std::abs(computed - closed));
      const double quoted = reference_integral_at_delta_one(n);
      max_quoted_ratio = std::max(max_quoted_ratio, computed / quoted);
      if (!(quoted < 0.0)) passed = false;
    }
    if (max_closed_dev > 1e-8) passed = false;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "I(n,1)<0 for n=5..20; wallis closed form dev %.2e (<=1e-8); quoted "
                  "2(4-n)/n^2 shares the sign, magnitude ratio up to %.3g (logged only)",
                  max_closed_dev, max_quoted_ratio);
    report_line(3, "delta=1 sign check", passed, buf);
  }

  const std::vector<int> dims = default_check_dims();
  const std::vector<double> deltas = default_check_deltas();

  // ---- criterion 4: continuity suite ---------------------------------------
  {
    const double mismatch = max_breakpoint_mismatch(dims, deltas);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max one-sided mismatch %.3e (<=1e-9)", mismatch);
    report_line(4, "continuity suite", mismatch <= 1e-9, buf);
  }

  // ---- criterion 5: envelope ordering suite ---------------------------------
  {
    const OrderingViolation violation = max_ordering_violation(dims, deltas, 10000);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "envelope violation %.3e, eigen bound violation %.3e (<=1e-12)",
                  violation.envelope, violation.eigen);
    report_line(5, "envelope ordering suite",
                violation.envelope <= 1e-12 && violation.eigen <= 1e-12, buf);
  }

  // ---- criterion 6: root certificate ----------------------------------------
  {
    const RootCertificate certificate = root_certificate(200, 0.26, 0.999);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "max residual %.3e (<1e-10), containment %s, 200 deltas",
                  certificate.max_residual, certificate.all_contained ? "ok" : "VIOLATED");
    report_line(6, "root certificate",
                certificate.max_residual < 1e-10 && certificate.all_contained, buf);
  }

  // ---- criterion 7: oracle equivalence ---------------------------------------
  {
    const OracleAgreement agreement = oracle_agreement(dims, {0.90, 0.95, 0.99}, 20001, 1e-10);
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "adaptive vs simpson dev %.3e (<=1e-8) on 48 pairs; wallis devs %.2e/%.2e "
                  "(<=1e-10)",
                  agreement.max_deviation, agreement.wallis_sin4, agreement.wallis_cos2sin4);
    report_line(7, "oracle equivalence",
                agreement.max_deviation <= 1e-8 && agreement.wallis_sin4 <= 1e-10 &&
                    agreement.wallis_cos2sin4 <= 1e-10,
                buf);
  }

  // ---- criterion 8: dual-path kernel agreement -------------------------------
  {
    std::vector<double> dual_deltas = deltas;
    dual_deltas.push_back(0.999);
    dual_deltas.push_back(1.0);
    const double mismatch = max_dual_path_mismatch(dims, dual_deltas, 2001, 0.0);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max |listing - envelopes| %.3e (<=1e-10), both variants",
                  mismatch);
    report_line(8, "dual-path kernel agreement", mismatch <= 1e-10, buf);
  }

  // ---- criterion 9: determinism ----------------------------------------------
  {
    const std::string command =
        "\"" + cli + "\" table1 --n 5..20 --variant both --out " + csv_b.string();
    const int rc = run_command(command);
    const std::string a = read_file(csv_a);
    const std::string b = read_file(csv_b);
    const bool passed = csv_a_ok && rc == 0 && !a.empty() && a == b;
    report_line(9, "determinism", passed,
                passed ? "two consecutive table1 runs are byte-identical"
                       : "outputs differ or a run failed");
  }

  std::cout << (g_failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: FAILURES PRESENT")
            << "\n";
  return g_failures;
}
