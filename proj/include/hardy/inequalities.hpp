#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardy/corpus.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/spaces.hpp"
#include "hardy/weights.hpp"

namespace hardy {

enum class Theorem {
  IntegralHardy,
  FractionalHardy,
  FractionalHardySobolev,
  LogHolder,
  LogHardySobolev,
  NashType,
  GroupHardy,
  GroupHardySobolev,
  HeisenbergHardy,
  HeisenbergHardySobolev,
};
const char* to_string(Theorem t);
Theorem parse_theorem(const std::string& name);

enum class Status { Pass, Fail, Vacuous, HypothesisViolated, NotAdmissible, LhsDivergent, Error };
const char* to_string(Status s);
/// Only Pass and Fail take part in the pass/fail verdict of a run.
bool is_decided(Status s);

struct InequalityCase {
  std::string id;
  Theorem theorem = Theorem::FractionalHardy;
  SpacePtr space;
  double s = 0.5;
  double p = 2.0;
  double q = 2.0;  // ignored by the Hardy theorems
  WeightSpec weights;
  /// g and h of the integral Hardy inequality.
  RadialWeight hardy_g, hardy_h;
  std::string function_id;
};

struct ConstantInfo {
  double value = 0.0;
  std::string provenance;  // paper_closed_form or paper_generic
  std::string formula;
};

struct VerificationReport {
  std::string case_id;
  Theorem theorem = Theorem::FractionalHardy;
  std::string space;
  std::string function;
  double s = 0.0, p = 0.0, q = 0.0;
  IntegralResult lhs, rhs;
  ConstantInfo constant;
  std::optional<AdmissibilityReport> d1;
  std::optional<double> ratio;  // lhs / (constant * rhs); exp(lhs - rhs) for the logarithmic forms
  bool pass = false;
  bool vacuous = false;
  Status status = Status::Error;
  double beta = 0.0;  // Heisenberg constants only
  std::string message;
  std::vector<std::string> notes;
  /// Intermediate quantities (norms, sub-inequality sides).
  std::map<std::string, double> extras;
};

/// Widened comparison: lhs + 3 err + truncation <= c * (rhs - 3 err).
bool widened_pass(const IntegralResult& lhs, double c, const IntegralResult& rhs);

/// 2^{sp} / (1 - smallness)^p.
double generic_hardy_constant(double s, double p, double smallness);

/// Closed-form constants of the group and Heisenberg theorems. Throws
/// InvalidInput when Q >= sp (or Q >= sq for the Sobolev forms).
ConstantInfo closed_form_constant(const InequalityCase& c);

/// D1 for the case (closed form when the weights are unit on a group-like
/// space, numeric otherwise).
AdmissibilityReport case_admissibility(const InequalityCase& c, const QuadratureConfig& cfg);

VerificationReport verify_integral_hardy(const InequalityCase& c, const TestFunction& f, const RadialWeight& g,
                                         const RadialWeight& h, const QuadratureConfig& cfg);
VerificationReport verify_fractional_hardy(const InequalityCase& c, const TestFunction& u, const QuadratureConfig& cfg);
VerificationReport verify_fractional_hardy_sobolev(const InequalityCase& c, const TestFunction& u,
                                                   const QuadratureConfig& cfg);
/// Continuous form on a space model.
VerificationReport verify_log_holder(const InequalityCase& c, const TestFunction& u, const QuadratureConfig& cfg);
/// Exact sums on a finite measure.
VerificationReport verify_log_holder(const std::vector<double>& mass, const std::vector<double>& u, double p,
                                     double q);
VerificationReport verify_log_hardy_sobolev(const InequalityCase& c, const TestFunction& u,
                                            const QuadratureConfig& cfg);
/// Uses g = A^{1/q} u |x|_a^{-s} and inner exponent p = 2.
VerificationReport verify_nash(const InequalityCase& c, const TestFunction& u, const QuadratureConfig& cfg);

/// Dispatches on c.theorem; never throws, failures become Status::Error.
VerificationReport verify_case(const InequalityCase& c, const QuadratureConfig& cfg);

}  // namespace hardy
