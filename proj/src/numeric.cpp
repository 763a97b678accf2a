#include "hardy/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "hardy/error.hpp"

namespace hardy {
namespace {

// QUADPACK 7/15 nodes on [-1, 1] (positive half, Kronrod ordering).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const ScalarFn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double value = resk * h;
  const double err = std::abs((resk - resg) * h);
  if (!std::isfinite(value)) {
    throw DivergenceError("non-finite integrand value on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  }
  return {a, b, value, err};
}

constexpr int kEvalsPerSegment = 15;

// Panel summation shared by the inward and outward integrators.
IntegralResult sum_panels(const ScalarFn& f, double b, const Tolerance& tol, bool outward) {
  constexpr int kMinPanelsBeforeZeroStop = 48;
  constexpr int kMinPanelsBeforeRatioStop = 6;
  // Growth over a few panels is normal (compact support, bumps far out);
  // divergence needs it to persist across many octaves.
  constexpr int kMinPanelsBeforeDivergence = 40;
  constexpr int kMaxPanels = 900;
  constexpr double kUnitRatio = 1.0 - 1e-7;

  IntegralResult total;
  std::vector<double> contrib;
  contrib.reserve(64);
  int ratio_at_one = 0;
  for (int k = 0; k < kMaxPanels; ++k) {
    double lo, hi;
    if (outward) {
      lo = std::ldexp(b, k);
      hi = std::ldexp(b, k + 1);
      if (!std::isfinite(hi)) break;
    } else {
      hi = std::ldexp(b, -k);
      lo = std::ldexp(b, -k - 1);
      if (lo == 0.0) break;
    }
    Tolerance panel_tol = tol;
    panel_tol.abs = std::max(tol.abs, 0.1 * tol.rel * std::abs(total.value));
    IntegralResult c = integrate_interval(f, lo, hi, panel_tol);
    total.value += c.value;
    total.error_estimate += c.error_estimate;
    total.samples_used += c.samples_used;
    contrib.push_back(std::abs(c.value));

    const double scale = std::max(std::abs(total.value), tol.abs);
    const double ck = contrib.back();
    if (k + 1 >= kMinPanelsBeforeZeroStop && ck <= 1e-3 * tol.rel * scale) {
      const double prev = contrib[contrib.size() - 2];
      const double prev2 = contrib[contrib.size() - 3];
      if (prev <= 1e-3 * tol.rel * scale && prev2 <= 1e-3 * tol.rel * scale) {
        total.truncation_bound = ck + prev;
        return total;
      }
    }
    if (k + 1 < kMinPanelsBeforeRatioStop || ck == 0.0) continue;
    const double cm1 = contrib[contrib.size() - 2];
    const double cm2 = contrib[contrib.size() - 3];
    if (cm1 == 0.0 || cm2 == 0.0) continue;
    const double rho = ck / cm1;
    const double rho_prev = cm1 / cm2;
    if (rho >= kUnitRatio && rho_prev >= kUnitRatio) {
      if (++ratio_at_one >= 3 && k + 1 >= kMinPanelsBeforeDivergence) {
        throw DivergenceError(std::string("integral diverges at ") +
                              (outward ? "infinity" : "zero") + " (panel ratio " +
                              std::to_string(rho) + ")");
      }
      continue;
    }
    ratio_at_one = 0;
    const bool stable = std::abs(rho - rho_prev) <= 0.05 * std::max(rho, 1e-3) || rho < 1e-3;
    if (!stable || rho >= 1.0) continue;
    const double remainder = ck * rho / (1.0 - rho);
    if (remainder <= tol.rel * scale) {
      const double sign = total.value >= 0 ? 1.0 : -1.0;
      total.value += sign * remainder;
      total.error_estimate += (0.25 + std::min(std::abs(rho - rho_prev), 1.0)) * remainder;
      total.truncation_bound = remainder;
      return total;
    }
  }
  throw DivergenceError(std::string("integral did not converge toward ") +
                        (outward ? "infinity" : "zero"));
}

}  // namespace

IntegralResult integrate_interval(const ScalarFn& f, double a, double b, const Tolerance& tol) {
  IntegralResult out;
  if (a == b) return out;
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  heap.push(first);
  double value = first.value;
  double error = first.error;
  long evals = kEvalsPerSegment;
  int segments = 1;
  while (error > std::max(tol.abs, tol.rel * std::abs(value)) && segments < tol.max_subdivisions) {
    Segment s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) {
      heap.push(s);
      break;  // interval exhausted at machine resolution
    }
    Segment l = gk15(f, s.a, mid);
    Segment r = gk15(f, mid, s.b);
    evals += 2 * kEvalsPerSegment;
    value += l.value + r.value - s.value;
    error += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
    ++segments;
  }
  // Re-sum to avoid drift from the incremental updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error_estimate = error;
  out.samples_used = evals;
  return out;
}

IntegralResult integrate_from_zero(const ScalarFn& f, double b, const Tolerance& tol) {
  require(b > 0.0, "integrate_from_zero needs a positive upper limit");
  return sum_panels(f, b, tol, /*outward=*/false);
}

IntegralResult integrate_to_infinity(const ScalarFn& f, double b, const Tolerance& tol) {
  require(b > 0.0, "integrate_to_infinity needs a positive lower limit");
  return sum_panels(f, b, tol, /*outward=*/true);
}

IntegralResult integrate_half_line(const ScalarFn& f, double split, const Tolerance& tol) {
  IntegralResult inner = integrate_from_zero(f, split, tol);
  IntegralResult outer = integrate_to_infinity(f, split, tol);
  inner += outer;
  return inner;
}

double golden_section_max(const ScalarFn& f, double lo, double hi, double x_tol, double& value) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  if (fc >= fd) {
    value = fc;
    return c;
  }
  value = fd;
  return d;
}

}  // namespace hardy
