#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "hardy/numeric.hpp"
#include "hardy/rng.hpp"
#include "hardy/spaces.hpp"

namespace hardy {

struct QuadratureConfig {
  double truncation_radius = 0.0;  // R; 0 derives it from the function metadata
  int radial_nodes = 400;          // Gauss-Kronrod segment budget per 1-D call
  int sphere_nodes = 64;           // directions for non-radial sphere averages
  long mc_samples = 200000;
  std::uint64_t seed = 20240917;
  double diagonal_split = 0.0;     // delta; 0 uses the function's length scale
  double rel_tolerance = 1e-7;
  int threads = 0;                 // 0: HARDY_VERIFY_THREADS, else hardware

  void validate() const;
  Tolerance tolerance() const;
};

/// Worker budget: cfg.threads, else HARDY_VERIFY_THREADS, else hardware.
int worker_count(const QuadratureConfig& cfg);

/// Runs body(i) for i in [0, n) on up to `workers` threads.
void parallel_for(int n, int workers, const std::function<void(int)>& body);

struct RadialHints {
  double support = std::numeric_limits<double>::infinity();
  double scale = 1.0;  // where the bulk of the integrand sits
  /// Optional bound on |g(r)| for r >= R, used for the truncation bound.
  std::function<double(double)> tail_envelope;
};

/// |S| * int lambda(r) g(r) dr (plus atoms). Integrates all of (0, inf)
/// unless cfg.truncation_radius is set, in which case the tail is bounded
/// through hints.tail_envelope.
IntegralResult radial_integral(const ScalarFn& g, const SpaceModel& s, const QuadratureConfig& cfg,
                               const RadialHints& hints = {});

/// Directions and weights for sphere integrals: exact two-point rule on
/// one-dimensional models, seeded sampling from sigma otherwise. Weights
/// sum to |S|.
struct SphereRule {
  std::vector<SpacePoint> dirs;
  std::vector<double> weights;
  bool exact = false;
};
SphereRule sphere_rule(const SpaceModel& s, int nodes, std::uint64_t seed);

/// Sampling density on (0, inf) proportional to a tabulated profile, with
/// power-law extensions below and above the table. pdf() is the exact
/// density of sample(), so importance weights are unbiased.
class RadialSampler {
 public:
  RadialSampler(const ScalarFn& phi, double lo, double hi, int bins_per_decade = 8);
  double sample(Rng& rng) const;
  double pdf(double r) const;
  double total_mass() const { return total_; }
  double low_exponent() const { return gamma_; }
  double high_exponent() const { return alpha_; }

 private:
  std::vector<double> edges_, mass_, cdf_;
  double lo_, hi_, gamma_ = 1.0, alpha_ = 1.0, mass_lo_ = 0.0, mass_hi_ = 0.0, total_ = 0.0;
};

/// Integrand on pairs for the seminorm-type double integrals.
struct PairIntegrand {
  /// F(x, y, d(x, y)).
  std::function<double(const SpacePoint&, const SpacePoint&, double)> F;
  /// Radial kernel k(rho) with F of order |u(x) - u(y)|^p k(d).
  std::function<double(double)> kernel;
  double diff_power = 2.0;    // p
  double length_scale = 1.0;  // |u(x) - u(y)| saturates beyond this distance
  double core_radius = 1.0;
  /// Roughly |u|^p as a function of |x|_a; steers where points are placed.
  std::function<double(double)> location_profile;
};

/// Monte Carlo estimate of the integral of F over X x X. Pairs are drawn as
/// (P, P.w) with P from a location density and w from a density matched to
/// kernel * min(rho / l, 1)^p, and both orderings are scored against the
/// combined pair density (unbiased on the whole of X x X). Throws
/// DivergenceError when the kernel mass is infinite near the diagonal or at
/// infinity.
IntegralResult double_singular_integral(const PairIntegrand& f, const SpaceModel& s, const QuadratureConfig& cfg);

/// int v(y) (int F(x, y) dx)^r dy.
struct MixedIntegrand {
  PairIntegrand inner;
  std::function<double(const SpacePoint&)> outer_weight;
  double exponent = 1.0;  // q / p
};

/// One-dimensional models use nested adaptive quadrature; otherwise an outer
/// Monte Carlo loop with an inner Monte Carlo estimate, the power applied
/// with a second-order bias correction.
IntegralResult mixed_norm_integral(const MixedIntegrand& f, const SpaceModel& s, const QuadratureConfig& cfg);

}  // namespace hardy
