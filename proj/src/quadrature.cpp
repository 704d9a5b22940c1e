#include "ympinch/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ympinch {

namespace {

constexpr int kMaxDepth = 48;
constexpr double kRootTol = 1e-12;       // bisection width for kernel roots
constexpr double kCertifyOffset = 1e-9;  // sign certificate distance
constexpr double kEdgeNudge = 1e-12;     // keeps scan samples inside (0, pi)

struct Accumulator {
  double sum = 0.0;
  double err = 0.0;         // accepted-leaf Richardson estimates
  double unresolved = 0.0;  // |diff| mass of depth-capped leaves
  long leaves = 0;
};

template <class F>
void refine(const F& f, double a, double fa, double m, double fm, double b, double fb,
            double whole, double tol, int depth, Accumulator& acc) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  if (!(lm > a && lm < m && rm > m && rm < b)) {
    // No representable midpoint left; accept what we have.
    acc.sum += whole;
    acc.leaves += 1;
    return;
  }
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  // A difference at the rounding floor of the Simpson sums carries no
  // information; refining past it only recurses on noise. The factor covers
  // the cancellation inside the kernel's branch combinations, whose terms
  // run two orders of magnitude above the result.
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(left) + std::abs(right) + std::abs(whole));
  if (std::abs(diff) <= 15.0 * tol || std::abs(diff) <= floor || depth >= kMaxDepth) {
    acc.sum += left + right + diff / 15.0;
    acc.err += std::abs(diff) / 15.0;
    acc.leaves += 1;
    if (depth >= kMaxDepth && std::abs(diff) > std::max(15.0 * tol, floor)) {
      // Feature narrower than the depth cap can resolve (a jump split at
      // finite root precision, say): charge its full mass to the estimate
      // and let the final tolerance check decide.
      acc.unresolved += std::abs(diff);
    }
    return;
  }
  refine(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1, acc);
  refine(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1, acc);
}

template <class F>
void integrate_piece(const F& f, double a, double b, double tol, Accumulator& acc) {
  if (!(b > a)) return;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  refine(f, a, fa, m, fm, b, fb, whole, tol, 0, acc);
}

// Partition of [0, pi]: endpoints, interior kernel breakpoints, detected sign
// changes. Strictly increasing.
std::vector<double> build_partition(const Kernel& kernel, double scan_resolution,
                                    std::vector<double>* roots_out) {
  std::vector<double> pts{0.0};
  for (double bp : kernel.breakpoints()) {
    if (bp > pts.back() && bp < kPi) pts.push_back(bp);
  }
  pts.push_back(kPi);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto piece_roots = find_sign_changes(kernel, pts[i], pts[i + 1], scan_resolution);
    roots.insert(roots.end(), piece_roots.begin(), piece_roots.end());
  }
  if (roots_out != nullptr) *roots_out = roots;

  pts.insert(pts.end(), roots.begin(), roots.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-12; }),
            pts.end());
  return pts;
}

}  // namespace

std::vector<double> find_sign_changes(const Kernel& kernel, double lo, double hi,
                                      double scan_resolution) {
  if (!(lo >= 0.0) || !(hi <= kPi) || !(lo < hi)) {
    throw std::invalid_argument("find_sign_changes: interval must satisfy 0 <= lo < hi <= pi");
  }
  if (!(scan_resolution > 0.0)) {
    throw std::invalid_argument("find_sign_changes: scan resolution must be positive");
  }

  const auto eval = [&](double rho) {
    return kernel.kernel_listing(std::clamp(rho, kEdgeNudge, kPi - kEdgeNudge));
  };

  const int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / scan_resolution)));
  std::vector<double> roots;
  double x_prev = lo;
  double f_prev = eval(lo);
  for (int i = 1; i <= cells; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / cells;
    const double fx = eval(x);
    if (f_prev == 0.0 || fx * f_prev < 0.0) {
      double a = x_prev;
      double b = x;
      double fa = f_prev;
      if (fa == 0.0) {
        // Grid point hit a root exactly; widen by one certificate offset so
        // the bracket has definite signs, or skip on a tangency.
        a = std::max(lo, x_prev - kCertifyOffset);
        fa = eval(a);
      }
      if (fa * eval(b) < 0.0) {
        while (b - a > kRootTol) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          const double fmid = eval(mid);
          if (fmid == 0.0) {
            a = mid - 0.25 * kRootTol;
            b = mid + 0.25 * kRootTol;
            break;
          }
          if (fa * fmid < 0.0) {
            b = mid;
          } else {
            a = mid;
            fa = fmid;
          }
        }
        const double root = 0.5 * (a + b);
        if (eval(root - kCertifyOffset) * eval(root + kCertifyOffset) < 0.0) {
          roots.push_back(root);
        }
      }
    }
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

IntegralResult integrate_kernel(const Kernel& kernel, const QuadratureOptions& options) {
  if (!(options.tol > 0.0)) {
    throw std::invalid_argument("integrate_kernel: tolerance must be positive");
  }
  IntegralResult result;
  const std::vector<double> pts =
      build_partition(kernel, options.scan_resolution, &result.sign_change_points);

  Accumulator acc;
  const auto f = [&kernel](double rho) { return kernel.integrand(rho); };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double share = options.tol * (pts[i + 1] - pts[i]) / kPi;
    integrate_piece(f, pts[i], pts[i + 1], share, acc);
  }
  const double estimate = acc.err + acc.unresolved;
  if (estimate > std::max(options.tol, options.rel_tol * std::abs(acc.sum))) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "adaptive refinement stalled above tolerance (estimate %.3e, value %.6g)",
                  estimate, acc.sum);
    throw QuadratureError(msg);
  }
  result.value = acc.sum;
  result.error_estimate = estimate;
  result.subintervals = static_cast<int>(acc.leaves);
  return result;
}

double oracle_integrate(const Kernel& kernel, int points_per_branch, double scan_resolution) {
  if (points_per_branch < 3 || points_per_branch % 2 == 0) {
    throw std::invalid_argument("oracle_integrate: points per branch must be odd and >= 3");
  }
  const std::vector<double> pts = build_partition(kernel, scan_resolution, nullptr);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    const double a = pts[p];
    const double b = pts[p + 1];
    const int n = points_per_branch - 1;  // even interval count
    const double h = (b - a) / n;
    double sum = kernel.integrand(a) + kernel.integrand(b);
    for (int i = 1; i < n; ++i) {
      sum += (i % 2 == 1 ? 4.0 : 2.0) * kernel.integrand(a + h * i);
    }
    total += sum * h / 3.0;
  }
  return total;
}

IntegralResult integrate_function(const std::function<double(double)>& f, double lo,
                                  double hi, std::span<const double> interior_breakpoints,
                                  double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_function: tolerance must be positive");
  if (!(lo < hi)) throw std::invalid_argument("integrate_function: requires lo < hi");
  std::vector<double> pts{lo};
  for (double bp : interior_breakpoints) {
    if (bp > lo && bp < hi) pts.push_back(bp);
  }
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Accumulator acc;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double share = tol * (pts[i + 1] - pts[i]) / (hi - lo);
    integrate_piece(f, pts[i], pts[i + 1], share, acc);
  }
  const double estimate = acc.err + acc.unresolved;
  if (estimate > std::max(tol, 1e-12 * std::abs(acc.sum))) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "adaptive refinement stalled above tolerance (estimate %.3e, value %.6g)",
                  estimate, acc.sum);
    throw QuadratureError(msg);
  }
  IntegralResult result;
  result.value = acc.sum;
  result.error_estimate = estimate;
  result.subintervals = static_cast<int>(acc.leaves);
  return result;
}

double unit_sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("unit_sphere_area: dimension must be >= 1");
  return 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
}

}  // namespace ympinch
