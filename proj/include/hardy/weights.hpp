#pragma once

#include <boost/rational.hpp>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hardy/quadrature.hpp"
#include "hardy/spaces.hpp"

namespace hardy {

/// A positive weight depending on |x|_a only.
struct RadialWeight {
  std::string id = "unit";
  std::function<double(double)> f = [](double) { return 1.0; };
  bool unit = true;
  bool constant = true;
  double c = 1.0;  // value when constant

  double operator()(double r) const { return f(r); }
};

/// unit, const(c), exp_decay(k) = e^{-k r}, power(g) = r^g, radial_table(path).
RadialWeight parse_weight(const std::string& id);

/// v is used as v(x, y) = v(|y|_a) in the Hardy theorem and as v(y) in the
/// Hardy-Sobolev family; z is the inner weight of the latter.
struct WeightSpec {
  RadialWeight v;
  RadialWeight z;
  /// Skip the constant-weight shortcuts (testing aid).
  bool force_numeric = false;

  bool all_unit() const { return v.unit && z.unit; }
};

struct AdmissibilityReport {
  double D1 = 0.0;
  double D1_err = 0.0;
  double smallness = 0.0;  // (p')^{1/p'} p^{1/q} D1
  double smallness_err = 0.0;
  bool admissible = false;
  bool finite = true;
  std::string method;  // closed_form, exact_discrete, numeric_radial
  double argmax_radius = 0.0;
  std::vector<std::string> warnings;
};

double conjugate(double p);

/// A(x) of the fractional Hardy theorem at |x|_a = r.
double compute_A_hardy_at(const SpaceModel& s, const WeightSpec& w, double p, double r, const QuadratureConfig& cfg);
double compute_A_hardy(const SpaceModel& s, const WeightSpec& w, double p, const SpacePoint& x,
                       const QuadratureConfig& cfg);
/// V(x) = int_{B(a, |x|_a)} v.
double compute_V_at(const SpaceModel& s, const WeightSpec& w, double r, const QuadratureConfig& cfg);
double compute_V(const SpaceModel& s, const WeightSpec& w, const SpacePoint& x, const QuadratureConfig& cfg);
/// A(x) of the Hardy-Sobolev theorem.
double compute_A_hs_at(const SpaceModel& s, const WeightSpec& w, double p, double q, double r,
                       const QuadratureConfig& cfg);
double compute_A_hs(const SpaceModel& s, const WeightSpec& w, double p, double q, const SpacePoint& x,
                    const QuadratureConfig& cfg);

/// Positive radial function tabulated on a log grid and interpolated with
/// cubic Lagrange in (log r, log f); direct evaluation outside the table.
class LogCache {
 public:
  LogCache(std::function<double(double)> f, double lo, double hi, int per_decade = 48);
  double operator()(double r) const;

 private:
  std::function<double(double)> f_;
  double lo_, hi_, step_;
  std::vector<double> logf_;
  bool usable_ = true;
};

/// Radial view of A (and V) for a theorem's weights, cached when numeric.
class RadialWeights {
 public:
  enum class Kind { Hardy, HardySobolev };
  RadialWeights(const SpaceModel& s, const WeightSpec& w, Kind kind, double p, double q, const QuadratureConfig& cfg);
  double A(double r) const;
  double V(double r) const;
  bool A_is_one() const { return a_one_; }

 private:
  std::shared_ptr<LogCache> a_, v_;
  double a_const_ = 1.0;
  bool a_one_ = false, a_constant_ = false;
  const SpaceModel* s_;
  WeightSpec w_;
};

/// D1 = sup_{x != a} [int_{|y| >= |x|} g]^{1/q} [int_{|y| < |x|} h^{1-p'}]^{1/p'}
/// for radial g, h. Log-spaced scan of [1e-4 R, R] plus golden-section
/// refinement; atom radii are added as candidates.
AdmissibilityReport compute_D1_numeric(const SpaceModel& s, const std::function<double(double)>& g,
                                       const std::function<double(double)>& h, double p, double q,
                                       const QuadratureConfig& cfg);

/// D1 of the fractional Hardy theorem (g = A/(|y|^{sp}|B|^p), h = A/|y|^{sp}).
AdmissibilityReport d1_fractional_hardy(const SpaceModel& s, const WeightSpec& w, double sp_s, double p,
                                        const QuadratureConfig& cfg);
/// D1 of the Hardy-Sobolev theorem, exponent pair (q, q).
AdmissibilityReport d1_hardy_sobolev(const SpaceModel& s, const WeightSpec& w, double sp_s, double p, double q,
                                     const QuadratureConfig& cfg);

/// Closed form on homogeneous groups with unit weights.
AdmissibilityReport closed_form_D1_homogeneous(double Q, double s, double p);

using Rational = boost::rational<long long>;
struct ExactSmallness {
  Rational smallness;  // Qp / (sp + Qp - Q)
  bool admissible;     // smallness < 1
};
ExactSmallness closed_form_smallness_exact(Rational Q, Rational s, Rational p);

}  // namespace hardy
