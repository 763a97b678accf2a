#pragma once

#include <cmath>
#include <functional>

namespace hardy {

/// Value of a numeric integral with its error accounting.
struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long samples_used = 0;
  /// Bound on the part of the domain that was not integrated.
  double truncation_bound = 0.0;

  IntegralResult& operator+=(const IntegralResult& o) {
    value += o.value;
    error_estimate += o.error_estimate;
    samples_used += o.samples_used;
    truncation_bound += o.truncation_bound;
    return *this;
  }
  IntegralResult scaled(double c) const {
    return {value * c, error_estimate * std::abs(c), samples_used, truncation_bound * std::abs(c)};
  }
};

using ScalarFn = std::function<double(double)>;

struct Tolerance {
  double rel = 1e-10;
  double abs = 0.0;
  /// Subinterval budget for one adaptive Gauss-Kronrod call.
  int max_subdivisions = 200;
};

/// Adaptive 7/15-point Gauss-Kronrod on [a, b] with global error-driven bisection.
IntegralResult integrate_interval(const ScalarFn& f, double a, double b, const Tolerance& tol);

/// Integral over (0, b] that tolerates an integrable power singularity at 0.
/// Dyadic panels are summed inward; a stable geometric panel ratio is
/// extrapolated. Throws DivergenceError when panel contributions stop
/// shrinking.
IntegralResult integrate_from_zero(const ScalarFn& f, double b, const Tolerance& tol);

/// Integral over [b, inf) using outward dyadic panels; same divergence policy.
IntegralResult integrate_to_infinity(const ScalarFn& f, double b, const Tolerance& tol);

/// Integral over (0, inf): split at `split`.
IntegralResult integrate_half_line(const ScalarFn& f, double split, const Tolerance& tol);

/// Maximizer of a unimodal function on [lo, hi] by golden-section search.
/// Returns the abscissa; `value` receives f at that point.
double golden_section_max(const ScalarFn& f, double lo, double hi, double x_tol, double& value);

}  // namespace hardy
