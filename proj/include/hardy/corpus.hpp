#pragma once

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hardy/spaces.hpp"

namespace hardy {

/// A parametric test function u with the metadata the verifiers rely on.
struct TestFunction {
  /// Off-centre smooth bump a * b(d(x, c) / radius) with c on the first axis.
  struct Bump {
    double center;
    double amplitude;
    double radius;
  };

  std::string id;
  std::string family;
  bool radial = true;
  /// u as a function of |x|_a (radial functions only).
  std::function<double(double)> profile;
  std::vector<Bump> bumps;  // non-radial functions only

  double lipschitz_bound = 0.0;  // |u(x) - u(y)| <= L d(x, y)
  double amplitude = 0.0;        // sup |u|
  double support_radius = std::numeric_limits<double>::infinity();
  double core_radius = 1.0;      // bulk of the mass lies inside this radius
  double vanishing_order = 0.0;  // |u(x)| = O(|x|_a^m) as x -> a
  double decay_power = std::numeric_limits<double>::infinity();  // |u| = O(|x|_a^{-k})
  /// Upper bound for sup over |x|_a >= r of |u(x)|.
  std::function<double(double)> envelope;
  std::map<std::string, double> closed_forms;

  double eval(const SpaceModel& s, const SpacePoint& x) const;
  /// Radial functions: value at distance r from the pole.
  double radial_value(double r) const { return profile(r); }
  bool is_zero() const { return amplitude == 0.0; }
  /// Radius about the pole outside which u vanishes in the given space.
  double support_in(const SpaceModel& s) const;
  /// Envelope adjusted to the space (non-radial functions use support_in).
  double envelope_in(const SpaceModel& s, double r) const;

  /// c * u.
  TestFunction scaled(double c) const;
  /// x -> u at lam * |x|_a (radial only).
  TestFunction dilated(double lam) const;

  /// Throws InvalidInput when the weighted p-norms needed by the theorems
  /// cannot be finite for this function in a space of dimension Q.
  void validate_for(double Q, double p) const;
};

/// Families: zero, constant(c), gaussian(sigma[,m]), power_decay(k[,m]),
/// bump(r0[,m]), ramp_indicator(r0,eps[,m]), two_bump(sep).
/// The optional m makes u vanish to order m at the pole (m = 0 or m >= 1).
TestFunction builtin(const std::string& id);

/// Ids used by the default suites.
std::vector<std::string> default_corpus_ids();

/// Parses "name(a,b,...)" into name and numeric arguments.
std::string parse_call(const std::string& text, std::vector<double>& args);

}  // namespace hardy
