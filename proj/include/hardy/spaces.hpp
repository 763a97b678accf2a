#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hardy/numeric.hpp"
#include "hardy/rng.hpp"
#include "hardy/space_point.hpp"

namespace hardy {

enum class SpaceKind { Euclidean, HomogeneousGroup, Heisenberg, Hyperbolic, RadialCustom };

/// Quasi-norms available on the abelian homogeneous group model.
enum class GroupNorm { Max, Sum, Euclidean };

const char* to_string(SpaceKind k);
const char* to_string(GroupNorm n);

/// Point mass placed at a fixed distance from the pole (RadialCustom only).
struct Atom {
  double radius;
  double mass;
};

/// How |B(a, r)| is produced: c * r^e, or numerically.
struct BallVolumeModel {
  bool closed_form = false;
  double coefficient = 0.0;
  double exponent = 0.0;
};

/// A polarisable metric measure space with pole a. Implementations are
/// immutable and safe to share across threads.
class SpaceModel {
 public:
  virtual ~SpaceModel() = default;

  virtual SpaceKind kind() const = 0;
  /// Canonical descriptor string accepted by parse_space.
  virtual std::string descriptor() const = 0;
  /// Number of coordinates of a point.
  virtual std::size_t dim() const = 0;
  virtual double homogeneous_dimension() const = 0;
  /// |S|, the total mass of the polar sphere measure.
  virtual double sphere_measure() const = 0;
  /// Standard error of sphere_measure (0 for closed forms).
  virtual double sphere_measure_error() const { return 0.0; }
  /// Triangle constant beta used by the quasi-triangle inequality.
  virtual double quasi_triangle_beta() const { return 1.0; }

  /// lambda(r); every implemented model is direction independent.
  virtual double polar_weight(double r) const = 0;
  virtual BallVolumeModel ball_model() const = 0;
  /// |B(a, r)| for the open ball.
  virtual double ball_volume(double r) const;

  virtual double distance(const SpacePoint& x, const SpacePoint& y) const = 0;
  /// |x|_a = d(a, x).
  virtual double norm(const SpacePoint& x) const = 0;
  SpacePoint base_point() const { return SpacePoint(dim()); }

  /// Point on the unit sphere about a, distributed as sigma / |S|.
  virtual SpacePoint sample_direction(Rng& rng) const = 0;
  /// The point at distance r from a in direction `dir` (a unit-sphere point).
  virtual SpacePoint from_polar(double r, const SpacePoint& dir) const = 0;
  /// The point y with d(x, y) = rho reached from x along `dir`. The map
  /// (rho, dir) -> y has Jacobian lambda(rho) against d(rho) d(sigma).
  virtual SpacePoint offset(const SpacePoint& x, double rho, const SpacePoint& dir) const = 0;
  /// False when pair integrals are not meaningful (ray models).
  virtual bool supports_pairs() const { return true; }

  /// Atoms of the measure; empty for absolutely continuous models.
  virtual const std::vector<Atom>& atoms() const;

  void check_point(const SpacePoint& x) const;
};

using SpacePtr = std::shared_ptr<const SpaceModel>;

SpacePtr make_euclidean(int n);
/// Abelian group R^n with dilation weights nu_i >= 1 and the chosen quasi-norm.
SpacePtr make_group(const std::vector<double>& weights, GroupNorm norm);
SpacePtr make_heisenberg(int n, double beta = 1.0);
SpacePtr make_hyperbolic(int n);
/// Ray model with lambda(r) = r^{Q-1} scaled by |S| = sphere, plus atoms.
/// sphere = 0 gives a purely atomic measure.
SpacePtr make_radial_power(double Q, double sphere, std::vector<Atom> atoms = {});
/// Ray model with lambda tabulated at increasing radii (linear interpolation,
/// zero beyond the last radius).
SpacePtr make_radial_table(std::vector<double> radii, std::vector<double> lambda, double sphere,
                           std::vector<Atom> atoms = {});

/// Parses "euclidean:2", "group:Q=4", "group:weights=1,1,2;norm=max",
/// "heisenberg:1;beta=1", "hyperbolic:2", "radial:Q=3;sphere=2".
SpacePtr parse_space(const std::string& descriptor);

double distance(const SpaceModel& s, const SpacePoint& x, const SpacePoint& y);
double ball_volume(const SpaceModel& s, double r);
double polar_weight(const SpaceModel& s, double r);

/// Heisenberg group law on points (x, y, t) with x, y in R^n.
SpacePoint heisenberg_compose(const SpacePoint& a, const SpacePoint& b, int n);
SpacePoint heisenberg_inverse(const SpacePoint& a);
/// Korányi-Folland gauge ((|x|^2+|y|^2)^2 + t^2)^{1/4}.
double koranyi_norm(const SpacePoint& xi, int n);
/// Exact Lebesgue measure of the unit Korányi ball in H^n.
double heisenberg_unit_ball_volume(int n);

struct BetaEstimate {
  double beta = 1.0;
  double raw_max = 0.0;  // largest observed ratio before clamping
  long pairs = 0;
  std::string note;
};

/// Sampled lower estimate of the Heisenberg quasi-triangle constant.
BetaEstimate estimate_beta(const SpaceModel& s, long samples, std::uint64_t seed,
                           int refine_starts = 32, int refine_steps = 400);

/// Monte Carlo estimate of |B(a, 1)| by rejection from a bounding box.
IntegralResult estimate_unit_ball_volume(const SpaceModel& s, long samples, std::uint64_t seed);

/// Samples a standard normal deviate (Box-Muller, deterministic given rng).
double standard_normal(Rng& rng);

}  // namespace hardy
