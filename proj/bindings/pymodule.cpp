#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ympinch/report.hpp"

namespace py = pybind11;
using namespace ympinch;

namespace {

PsiVariant variant_from(const std::string& name) {
  if (name == "listing") return PsiVariant::Listing;
  if (name == "proposition") return PsiVariant::Proposition;
  throw py::value_error("psi_variant must be 'listing' or 'proposition'");
}

py::dict integral_to_dict(const IntegralResult& result) {
  py::dict d;
  d["value"] = result.value;
  d["error_estimate"] = result.error_estimate;
  d["subintervals"] = result.subintervals;
  d["sign_change_points"] = result.sign_change_points;
  return d;
}

py::dict threshold_to_dict(const ThresholdResult& result) {
  py::dict d;
  d["n"] = result.n;
  d["delta_n"] = result.delta_n;
  d["bracket"] = py::make_tuple(result.bracket_low, result.bracket_high);
  d["integral_at_bracket"] = py::make_tuple(result.integral_at_low, result.integral_at_high);
  d["psi_variant"] = to_string(result.psi_variant);
  d["crossings"] = static_cast<int>(result.crossings.size());
  d["multiple_crossings"] = result.multiple_crossings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curvature-pinching stability thresholds for Yang-Mills connections";

  m.def(
      "rho_delta",
      [](double delta) { return rho_delta(PinchParameter(delta)).value(); },
      py::arg("delta"),
      "Envelope-exchange radius in (pi/2, pi/(2 sqrt(delta))); pi/2 at delta=1.");

  m.def(
      "phi_base",
      [](double delta, double rho) { return phi_base(PinchParameter(delta), rho); },
      py::arg("delta"), py::arg("rho"),
      "delta sin^2(rho) cot^2(sqrt(delta) rho), series-stabilized near 0.");

  m.def(
      "psi_base",
      [](double delta, double rho) { return psi_base(PinchParameter(delta), rho); },
      py::arg("delta"), py::arg("rho"),
      "sqrt(delta) cos(rho) sin(rho) cot(sqrt(delta) rho).");

  m.def(
      "kernel_phi",
      [](int n, double delta, double rho, const std::string& psi_variant) {
        const Kernel kernel(KernelConfig{n, delta, variant_from(psi_variant)});
        return kernel.kernel_listing(rho);
      },
      py::arg("n"), py::arg("delta"), py::arg("rho"), py::arg("psi_variant") = "listing",
      "Piecewise stability kernel value at rho.");

  m.def(
      "volume_weight",
      [](int n, double delta, double rho, double kernel_sign) {
        const Kernel kernel(KernelConfig{n, delta, PsiVariant::Listing});
        return kernel.volume_weight(rho, kernel_sign);
      },
      py::arg("n"), py::arg("delta"), py::arg("rho"), py::arg("kernel_sign"),
      "Worst-case volume weight; branch chosen by the kernel sign.");

  m.def(
      "breakpoints",
      [](int n, double delta) {
        const Kernel kernel(KernelConfig{n, delta, PsiVariant::Listing});
        const auto bps = kernel.breakpoints();
        return py::make_tuple(bps[0], bps[1], bps[2]);
      },
      py::arg("n"), py::arg("delta"),
      "Interior kernel breakpoints (pi/2, rho_delta, pi/(2 sqrt(delta))).");

  m.def(
      "integral",
      [](int n, double delta, const std::string& psi_variant, double tol,
         bool include_sphere_factor) {
        QuadratureOptions options;
        options.tol = tol;
        py::gil_scoped_release release;
        IntegralResult result =
            integral_I(n, PinchParameter(delta), variant_from(psi_variant), options);
        if (include_sphere_factor) {
          const double factor = unit_sphere_area(n);
          result.value *= factor;
          result.error_estimate *= factor;
        }
        py::gil_scoped_acquire acquire;
        return integral_to_dict(result);
      },
      py::arg("n"), py::arg("delta"), py::arg("psi_variant") = "listing",
      py::arg("tol") = 1e-10, py::arg("include_sphere_factor") = false,
      "I(n, delta): integral of kernel * volume weight over (0, pi).");

  m.def(
      "find_threshold",
      [](int n, const std::string& psi_variant, double tol, double scan_step) {
        const PsiVariant variant = variant_from(psi_variant);
        py::gil_scoped_release release;
        const ThresholdResult result = find_threshold(n, tol, variant, scan_step);
        py::gil_scoped_acquire acquire;
        return threshold_to_dict(result);
      },
      py::arg("n"), py::arg("psi_variant") = "listing", py::arg("tol") = 1e-6,
      py::arg("scan_step") = 1e-3,
      "Smallest delta where I(n, delta) turns negative (scan + bisection).");

  m.def(
      "table1",
      [](int n_low, int n_high, const std::string& variants, double tol, double scan_step) {
        Table1Options options;
        options.n_low = n_low;
        options.n_high = n_high;
        if (variants == "listing") {
          options.variants = VariantSelection::Listing;
        } else if (variants == "proposition") {
          options.variants = VariantSelection::Proposition;
        } else if (variants == "both") {
          options.variants = VariantSelection::Both;
        } else {
          throw py::value_error("variants must be 'listing', 'proposition' or 'both'");
        }
        options.bisection_tol = tol;
        options.scan_step = scan_step;
        Table1Report report;
        {
          py::gil_scoped_release release;
          report = table1_report(options);
        }
        py::list rows;
        for (const Table1Row& row : report.rows) {
          py::dict d;
          d["n"] = row.n;
          d["reference"] = row.reference.has_value() ? py::object(py::float_(*row.reference))
                                                     : py::object(py::none());
          const auto outcome_obj = [](const std::optional<ThresholdOutcome>& outcome) {
            if (!outcome.has_value()) return py::object(py::none());
            py::dict o;
            o["crossings"] = outcome->crossings;
            o["single_crossing"] = outcome->single_crossing;
            if (outcome->result.has_value()) {
              o["delta_n"] = outcome->result->delta_n;
              o["error"] = py::none();
            } else {
              o["delta_n"] = py::none();
              o["error"] = outcome->error;
            }
            return py::object(o);
          };
          d["listing"] = outcome_obj(row.listing);
          d["proposition"] = outcome_obj(row.proposition);
          rows.append(d);
        }
        return rows;
      },
      py::arg("n_low") = 5, py::arg("n_high") = 20, py::arg("variants") = "both",
      py::arg("tol") = 1e-6, py::arg("scan_step") = 1e-3,
      "Threshold table rows with per-variant outcomes.");

  m.def("table1_reference",
        [](int n) -> py::object {
          const auto reference = table1_reference(n);
          return reference.has_value() ? py::object(py::float_(*reference))
                                       : py::object(py::none());
        },
        py::arg("n"), "Reference threshold for 5 <= n <= 20, else None.");

  m.def("unit_sphere_area", &unit_sphere_area, py::arg("n"),
        "Surface area of the unit (n-1)-sphere.");
}
