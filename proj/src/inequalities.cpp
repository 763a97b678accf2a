#include "hardy/inequalities.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "hardy/discrete_oracle.hpp"
#include "hardy/error.hpp"

namespace hardy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ThemeName {
  Theorem t;
  const char* name;
};
constexpr ThemeName kTheorems[] = {
    {Theorem::IntegralHardy, "IntegralHardy"},
    {Theorem::FractionalHardy, "FractionalHardy"},
    {Theorem::FractionalHardySobolev, "FractionalHardySobolev"},
    {Theorem::LogHolder, "LogHolder"},
    {Theorem::LogHardySobolev, "LogHardySobolev"},
    {Theorem::NashType, "NashType"},
    {Theorem::GroupHardy, "GroupHardy"},
    {Theorem::GroupHardySobolev, "GroupHardySobolev"},
    {Theorem::HeisenbergHardy, "HeisenbergHardy"},
    {Theorem::HeisenbergHardySobolev, "HeisenbergHardySobolev"},
};

bool is_hs_family(Theorem t) {
  return t == Theorem::FractionalHardySobolev || t == Theorem::GroupHardySobolev ||
         t == Theorem::HeisenbergHardySobolev || t == Theorem::LogHardySobolev || t == Theorem::NashType;
}

bool is_closed_form(Theorem t) {
  return t == Theorem::GroupHardy || t == Theorem::GroupHardySobolev || t == Theorem::HeisenbergHardy ||
         t == Theorem::HeisenbergHardySobolev;
}

bool is_heisenberg(Theorem t) { return t == Theorem::HeisenbergHardy || t == Theorem::HeisenbergHardySobolev; }

// |B(a, r)| = |S| r^Q / Q with lambda = r^{Q-1}.
bool group_like(const SpaceModel& s) {
  const BallVolumeModel bm = s.ball_model();
  const double Q = s.homogeneous_dimension();
  return bm.closed_form && s.atoms().empty() && bm.exponent == Q &&
         std::abs(bm.coefficient - s.sphere_measure() / Q) <= 1e-14 * bm.coefficient;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

VerificationReport base_report(const InequalityCase& c) {
  VerificationReport r;
  r.case_id = c.id;
  r.theorem = c.theorem;
  r.space = c.space ? c.space->descriptor() : "";
  r.function = c.function_id;
  r.s = c.s;
  r.p = c.p;
  r.q = c.q;
  return r;
}

VerificationReport& finish(VerificationReport& r) {
  const double denom = r.constant.value * r.rhs.value;
  if (r.lhs.value == 0.0) r.ratio = 0.0;
  else if (denom > 0.0 && std::isfinite(denom)) r.ratio = r.lhs.value / denom;
  r.pass = widened_pass(r.lhs, r.constant.value, r.rhs);
  r.status = r.pass ? Status::Pass : Status::Fail;
  return r;
}

VerificationReport& stop(VerificationReport& r, Status st, const std::string& why) {
  r.status = st;
  r.pass = false;
  r.vacuous = st == Status::Vacuous;
  r.message = why;
  return r;
}

VerificationReport& zero_pass(VerificationReport& r) {
  r.lhs = {};
  r.rhs = {};
  r.ratio = 0.0;
  r.pass = true;
  r.status = Status::Pass;
  r.message = "u vanishes identically";
  return r;
}

// Difference scale below which |u(x) - u(y)| grows linearly in d(x, y).
double diff_length(const TestFunction& u) {
  if (!(u.lipschitz_bound > 0.0)) return std::max(u.core_radius, 1e-3);
  return std::max(u.amplitude / u.lipschitz_bound, 1e-3);
}

std::function<double(double)> ball_function(const SpaceModel& s) {
  if (s.ball_model().closed_form) return [&s](double r) { return s.ball_volume(r); };
  auto cache = std::make_shared<LogCache>([&s](double r) { return s.ball_volume(r); }, 1e-8, 1e4, 32);
  return [cache](double r) { return (*cache)(r); };
}

// int phi(|x|_a, u(x)) dx.
IntegralResult integrate_over_space(const SpaceModel& s, const TestFunction& u,
                                    const std::function<double(double, double)>& phi, const QuadratureConfig& cfg) {
  const double support = u.support_in(s);
  const double scale = std::max(u.core_radius, 1e-12);
  if (u.radial) {
    QuadratureConfig c = cfg;
    c.truncation_radius = 0.0;
    RadialHints hints;
    hints.support = support;
    hints.scale = scale;
    return radial_integral([&](double r) { return phi(r, u.profile(r)); }, s, c, hints);
  }
  require(s.kind() != SpaceKind::RadialCustom, "non-radial functions need a space with directions");
  const Tolerance tol = cfg.tolerance();
  const SphereRule rule = sphere_rule(s, cfg.sphere_nodes, cfg.seed);
  IntegralResult out;
  std::vector<double> per_dir;
  for (std::size_t i = 0; i < rule.dirs.size(); ++i) {
    const SpacePoint& dir = rule.dirs[i];
    auto g = [&](double r) {
      const double l = s.polar_weight(r);
      return l == 0.0 ? 0.0 : l * phi(r, u.eval(s, s.from_polar(r, dir)));
    };
    const IntegralResult part =
        std::isfinite(support) ? integrate_from_zero(g, support, tol) : integrate_half_line(g, scale, tol);
    out.value += rule.weights[i] * part.value;
    out.error_estimate += rule.weights[i] * part.error_estimate;
    out.samples_used += part.samples_used;
    per_dir.push_back(part.value);
  }
  if (!rule.exact && per_dir.size() > 1) {
    double mean = 0.0, m2 = 0.0;
    for (double v : per_dir) mean += v;
    mean /= per_dir.size();
    for (double v : per_dir) m2 += (v - mean) * (v - mean);
    const double sd = std::sqrt(m2 / (per_dir.size() - 1));
    out.error_estimate += s.sphere_measure() * sd / std::sqrt(double(per_dir.size()));
  }
  return out;
}

// Cheap test for a non-integrable pole: |u| ~ r^m near a against r^{-e}.
// Only used when A is constant; other weights go through the quadrature.
bool pole_diverges(const SpaceModel& s, const TestFunction& u, const WeightSpec& w, double power, double singular) {
  if (!(w.v.constant && w.z.constant)) return false;
  const double Q = s.homogeneous_dimension();
  if (u.radial) return u.vanishing_order * power + Q <= singular;
  return u.eval(s, s.base_point()) != 0.0 && Q <= singular;
}

struct Kernel {
  std::function<double(double)> k;
  std::string form;
};

// Kernel of the seminorm: d^{-sp-Q} for the closed-form theorems, otherwise
// 1 / (d^{sp} |B(a, d/2)|).
Kernel seminorm_kernel(const SpaceModel& s, Theorem t, double sp) {
  if (is_closed_form(t)) {
    const double e = sp + s.homogeneous_dimension();
    return {[e](double d) { return std::pow(d, -e); }, "d^{-sp-Q}"};
  }
  auto ball = ball_function(s);
  return {[ball, sp](double d) { return std::pow(d, -sp) / ball(0.5 * d); }, "1/(d^{sp}|B(a,d/2)|)"};
}

PairIntegrand pair_integrand(const SpaceModel& s, const TestFunction& u, const Kernel& kern, double p,
                             const RadialWeight& x_weight, const RadialWeight& y_weight) {
  PairIntegrand f;
  f.kernel = kern.k;
  f.diff_power = p;
  f.length_scale = diff_length(u);
  f.core_radius = std::isfinite(u.support_in(s)) ? u.support_in(s) : u.core_radius;
  const SpaceModel* sp = &s;
  auto k = kern.k;
  const bool xw = !x_weight.unit, yw = !y_weight.unit;
  f.F = [sp, u, k, p, x_weight, y_weight, xw, yw](const SpacePoint& x, const SpacePoint& y, double d) {
    const double diff = std::abs(u.eval(*sp, x) - u.eval(*sp, y));
    if (diff == 0.0) return 0.0;
    double v = std::pow(diff, p) * k(d);
    if (xw) v *= x_weight(sp->norm(x));
    if (yw) v *= y_weight(sp->norm(y));
    return v;
  };
  if (u.radial) {
    auto prof = u.profile;
    f.location_profile = [prof, p](double r) { return std::pow(std::abs(prof(r)), p); };
  } else {
    const double R = f.core_radius;
    f.location_profile = [R](double r) { return r < R ? 1.0 : 0.0; };
  }
  return f;
}

void check_space(const InequalityCase& c, bool uses_s = true) {
  require(static_cast<bool>(c.space), "case has no space");
  if (uses_s) require(c.s > 0.0 && std::isfinite(c.s), "s must be positive");
  require(c.p > 1.0 && std::isfinite(c.p), "p must exceed 1");
}

// Shared guard for the closed-form theorems; returns a reason when the
// hypotheses fail.
std::string closed_form_guard(const InequalityCase& c, bool sobolev) {
  const SpaceModel& s = *c.space;
  if (is_heisenberg(c.theorem))
    require(s.kind() == SpaceKind::Heisenberg, std::string(to_string(c.theorem)) + " needs a Heisenberg space");
  else
    require(s.kind() == SpaceKind::Euclidean || s.kind() == SpaceKind::HomogeneousGroup,
            std::string(to_string(c.theorem)) + " needs a Euclidean or homogeneous group space");
  require(c.weights.all_unit(), std::string(to_string(c.theorem)) + " is stated for unit weights");
  const double Q = s.homogeneous_dimension();
  const bool sp_ok = Q < c.s * c.p;
  const bool sq_ok = !sobolev || Q < c.s * c.q;
  if (sp_ok && sq_ok) return {};
  std::string why = "hypothesis fails:";
  if (!sp_ok) why += " Q=" + num(Q) + " >= sp=" + num(c.s * c.p);
  if (!sq_ok) why += std::string(sp_ok ? "" : ";") + " Q=" + num(Q) + " >= sq=" + num(c.s * c.q);
  return why;
}

struct WeightedNorms {
  std::function<double(double)> factor;  // A^{1/q}(r) r^{-s}
};

IntegralResult pow_half(const IntegralResult& r, double e) {
  IntegralResult out;
  out.value = std::pow(r.value, e);
  out.error_estimate = r.value > 0.0 ? std::abs(e) * out.value * r.error_estimate / r.value : 0.0;
  out.truncation_bound = r.value > 0.0 ? std::abs(e) * out.value * r.truncation_bound / r.value : 0.0;
  out.samples_used = r.samples_used;
  return out;
}

}  // namespace

const char* to_string(Theorem t) {
  for (const auto& e : kTheorems)
    if (e.t == t) return e.name;
  return "?";
}

Theorem parse_theorem(const std::string& name) {
  for (const auto& e : kTheorems)
    if (name == e.name) return e.t;
  throw InvalidInput("unknown theorem '" + name + "'");
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Vacuous: return "vacuous";
    case Status::HypothesisViolated: return "hypothesis-violated";
    case Status::NotAdmissible: return "not-admissible";
    case Status::LhsDivergent: return "lhs-divergent";
    case Status::Error: return "error";
  }
  return "?";
}

bool is_decided(Status s) { return s == Status::Pass || s == Status::Fail; }

bool widened_pass(const IntegralResult& lhs, double c, const IntegralResult& rhs) {
  const double hi = lhs.value + 3.0 * lhs.error_estimate + lhs.truncation_bound;
  const double lo = c * (rhs.value - 3.0 * rhs.error_estimate);
  return hi <= lo || lhs.value == 0.0;
}

double generic_hardy_constant(double s, double p, double smallness) {
  require(smallness < 1.0, "generic constant needs smallness < 1");
  return std::pow(2.0, s * p) / std::pow(1.0 - smallness, p);
}

ConstantInfo closed_form_constant(const InequalityCase& c) {
  check_space(c);
  require(is_closed_form(c.theorem), std::string(to_string(c.theorem)) + " has no closed-form constant");
  const bool sobolev = c.theorem == Theorem::GroupHardySobolev || c.theorem == Theorem::HeisenbergHardySobolev;
  const std::string why = closed_form_guard(c, sobolev);
  if (!why.empty()) throw InvalidInput(why);
  const SpaceModel& sp = *c.space;
  const double Q = sp.homogeneous_dimension(), S = sp.sphere_measure();
  const double s = c.s, p = c.p, q = c.q;
  ConstantInfo out;
  out.provenance = "paper_closed_form";
  switch (c.theorem) {
    case Theorem::GroupHardy:
      out.value = std::pow(2.0, s * p + Q) * Q * std::pow(s * p + Q * p - Q, p) / (S * std::pow(s * p - Q, p));
      out.formula = "2^{sp+Q} Q (sp+Qp-Q)^p / (|S| (sp-Q)^p)";
      break;
    case Theorem::GroupHardySobolev:
      out.value = std::pow(2.0, s * q + Q * q / p) * std::pow(Q, q / p) * std::pow(s * q + Q * q - Q, q) /
                  (std::pow(S, q / p) * std::pow(s * q - Q, q));
      out.formula = "2^{sq+Qq/p} Q^{q/p} (sq+Qq-Q)^q / (|S|^{q/p} (sq-Q)^q)";
      break;
    case Theorem::HeisenbergHardy: {
      const double b = sp.quasi_triangle_beta(), w = S / Q;
      out.value = std::pow(b + 1.0, s * p + Q) * std::pow(s * p + Q * p - Q, p) / (w * std::pow(s * p - Q, p));
      out.formula = "(beta+1)^{sp+Q} (sp+Qp-Q)^p / (omega_n (sp-Q)^p)";
      break;
    }
    case Theorem::HeisenbergHardySobolev: {
      const double b = sp.quasi_triangle_beta(), w = S / Q;
      out.value = std::pow(b + 1.0, s * q + Q * q / p) * std::pow(s * q + Q * q - Q, q) /
                  (std::pow(w, q / p) * std::pow(s * q - Q, q));
      out.formula = "(beta+1)^{sq+Qq/p} (sq+Qq-Q)^q / (omega_n^{q/p} (sq-Q)^q)";
      break;
    }
    default:
      break;
  }
  return out;
}

AdmissibilityReport case_admissibility(const InequalityCase& c, const QuadratureConfig& cfg) {
  check_space(c);
  const SpaceModel& s = *c.space;
  const bool shortcut = group_like(s) && !c.weights.force_numeric;
  if (c.theorem == Theorem::IntegralHardy) {
    require(c.q >= c.p && std::isfinite(c.q), "integral Hardy needs p <= q < inf");
    const RadialWeight g = c.hardy_g, h = c.hardy_h;
    return compute_D1_numeric(s, g.f, h.f, c.p, c.q, cfg);
  }
  require(c.theorem != Theorem::LogHolder, "LogHolder has no admissibility condition");
  if (is_hs_family(c.theorem)) {
    require(c.q > 1.0 && std::isfinite(c.q), "q must lie in (1, inf)");
    const double p_inner = c.theorem == Theorem::NashType ? 2.0 : c.p;
    if (shortcut && c.weights.all_unit()) return closed_form_D1_homogeneous(s.homogeneous_dimension(), c.s, c.q);
    return d1_hardy_sobolev(s, c.weights, c.s, p_inner, c.q, cfg);
  }
  if (shortcut && c.weights.v.unit) return closed_form_D1_homogeneous(s.homogeneous_dimension(), c.s, c.p);
  return d1_fractional_hardy(s, c.weights, c.s, c.p, cfg);
}

VerificationReport verify_integral_hardy(const InequalityCase& c, const TestFunction& f, const RadialWeight& g,
                                         const RadialWeight& h, const QuadratureConfig& cfg) {
  VerificationReport r = base_report(c);
  check_space(c, false);
  require(c.q >= c.p && std::isfinite(c.q), "integral Hardy needs 1 < p <= q < inf");
  require(f.radial, "integral Hardy verification needs a radial f");
  const SpaceModel& s = *c.space;
  r.d1 = compute_D1_numeric(s, g.f, h.f, c.p, c.q, cfg);
  if (!r.d1->finite) return stop(r, Status::NotAdmissible, "D1 is infinite; the inequality cannot hold");
  r.constant = {hardy_upper_constant(r.d1->D1, c.p, c.q), "paper_generic", "(p')^{1/p'} p^{1/q} D1"};
  if (f.is_zero()) return zero_pass(r);

  QuadratureConfig qc = cfg;
  qc.truncation_radius = 0.0;
  RadialHints fh;
  fh.support = f.support_radius;
  fh.scale = f.core_radius;
  try {
    auto inner = std::make_shared<LogCache>(
        [&](double rad) {
          RadialHints hh = fh;
          hh.support = std::min(rad, f.support_radius);
          if (!(hh.support > 0.0)) return 0.0;
          return radial_integral([&](double t) { return std::abs(f.profile(t)); }, s, qc, hh).value;
        },
        1e-8, 1e4, 64);
    const double total = radial_integral([&](double t) { return std::abs(f.profile(t)); }, s, qc, fh).value;
    auto F = [&](double rad) { return rad >= 1e4 ? total : (*inner)(rad); };
    RadialHints oh;
    oh.scale = f.core_radius;
    const IntegralResult outer = radial_integral([&](double t) { return std::pow(F(t), c.q) * g(t); }, s, qc, oh);
    r.lhs = pow_half(outer, 1.0 / c.q);
    const IntegralResult rh =
        radial_integral([&](double t) { return std::pow(std::abs(f.profile(t)), c.p) * h(t); }, s, qc, fh);
    r.rhs = pow_half(rh, 1.0 / c.p);
  } catch (const DivergenceError& e) {
    return stop(r, Status::LhsDivergent, std::string("a side diverges: ") + e.what());
  }
  r.extras["D1"] = r.d1->D1;
  return finish(r);
}

VerificationReport verify_fractional_hardy(const InequalityCase& c, const TestFunction& u, const QuadratureConfig& cfg) {
  VerificationReport r = base_report(c);
  check_space(c);
  const SpaceModel& s = *c.space;
  const double sp = c.s * c.p;
  r.q = c.p;
  if (is_closed_form(c.theorem)) {
    const std::string why = closed_form_guard(c, false);
    if (!why.empty()) return stop(r, Status::HypothesisViolated, why);
    r.d1 = closed_form_D1_homogeneous(s.homogeneous_dimension(), c.s, c.p);
    r.constant = closed_form_constant(c);
    if (is_heisenberg(c.theorem)) {
      r.beta = s.quasi_triangle_beta();
      r.notes.push_back("beta=" + num(r.beta));
    }
  } else {
    r.d1 = case_admissibility(c, cfg);
    if (!r.d1->finite) return stop(r, Status::NotAdmissible, "D1 diverges");
    if (!r.d1->admissible)
      return stop(r, Status::NotAdmissible, "smallness " + num(r.d1->smallness) + " is not below 1");
    r.constant = {generic_hardy_constant(c.s, c.p, r.d1->smallness), "paper_generic",
                  "2^{sp} / (1 - (p')^{1/p'} p^{1/p} D1)^p"};
  }
  if (u.is_zero()) return zero_pass(r);
  if (c.s >= 1.0) return stop(r, Status::Vacuous, "RHS divergent for s >= 1; inequality vacuous");
  if (!s.supports_pairs()) return stop(r, Status::Error, "space " + s.descriptor() + " has no pair geometry");

  const RadialWeights rw(s, c.weights, RadialWeights::Kind::Hardy, c.p, c.p, cfg);
  if (pole_diverges(s, u, c.weights, c.p, sp))
    return stop(r, Status::LhsDivergent, "LHS diverges at the pole: u must vanish there to order > (sp-Q)/p");
  try {
    r.lhs = integrate_over_space(
        s, u, [&](double rad, double uv) { return rw.A(rad) * std::pow(std::abs(uv), c.p) * std::pow(rad, -sp); },
        cfg);
  } catch (const DivergenceError& e) {
    return stop(r, Status::LhsDivergent, std::string("LHS diverges: ") + e.what());
  }
  const Kernel kern = seminorm_kernel(s, c.theorem, sp);
  r.notes.push_back("kernel=" + kern.form);
  try {
    RadialWeight unit;
    r.rhs = double_singular_integral(pair_integrand(s, u, kern, c.p, unit, c.weights.v), s, cfg);
  } catch (const DivergenceError& e) {
    return stop(r, Status::Vacuous, std::string("RHS divergent; inequality vacuous: ") + e.what());
  }
  return finish(r);
}

namespace {

struct HsSetup {
  AdmissibilityReport d1;
  ConstantInfo constant;
  Kernel kernel;
};

// Admissibility and constant of the Sobolev family; returns a status other
// than Pass when the case stops early.
Status hs_setup(const InequalityCase& c, double p_inner, const QuadratureConfig& cfg, HsSetup& out,
                VerificationReport& r) {
  const SpaceModel& s = *c.space;
  if (is_closed_form(c.theorem)) {
    const std::string why = closed_form_guard(c, true);
    if (!why.empty()) {
      stop(r, Status::HypothesisViolated, why);
      return Status::HypothesisViolated;
    }
    out.d1 = closed_form_D1_homogeneous(s.homogeneous_dimension(), c.s, c.q);
    out.constant = closed_form_constant(c);
    if (is_heisenberg(c.theorem)) {
      r.beta = s.quasi_triangle_beta();
      r.notes.push_back("beta=" + num(r.beta));
    }
  } else {
    InequalityCase cc = c;
    cc.p = p_inner;
    out.d1 = case_admissibility(cc, cfg);
    if (!out.d1.finite) {
      stop(r, Status::NotAdmissible, "D1 diverges");
      return Status::NotAdmissible;
    }
    if (!out.d1.admissible) {
      stop(r, Status::NotAdmissible, "smallness " + num(out.d1.smallness) + " is not below 1");
      return Status::NotAdmissible;
    }
    out.constant = {generic_hardy_constant(c.s, c.q, out.d1.smallness), "paper_generic",
                    "2^{sq} / (1 - (q')^{1/q'} q^{1/q} D1)^q"};
  }
  r.d1 = out.d1;
  out.kernel = seminorm_kernel(s, c.theorem, c.s * p_inner);
  return Status::Pass;
}

IntegralResult hs_rhs(const InequalityCase& c, const TestFunction& u, double p_inner, const Kernel& kern,
                      const QuadratureConfig& cfg) {
  const SpaceModel& s = *c.space;
  MixedIntegrand m;
  RadialWeight unit;
  m.inner = pair_integrand(s, u, kern, p_inner, c.weights.z, unit);
  const RadialWeight v = c.weights.v;
  const SpaceModel* sp = &s;
  if (v.unit) m.outer_weight = [](const SpacePoint&) { return 1.0; };
  else m.outer_weight = [v, sp](const SpacePoint& y) { return v(sp->norm(y)); };
  m.exponent = c.q / p_inner;
  return mixed_norm_integral(m, s, cfg);
}

}  // namespace

VerificationReport verify_fractional_hardy_sobolev(const InequalityCase& c, const TestFunction& u,
                                                   const QuadratureConfig& cfg) {
  VerificationReport r = base_report(c);
  check_space(c);
  require(c.q > 1.0 && std::isfinite(c.q), "q must lie in (1, inf)");
  const SpaceModel& s = *c.space;
  HsSetup hs;
  if (hs_setup(c, c.p, cfg, hs, r) != Status::Pass) return r;
  r.constant = hs.constant;
  if (u.is_zero()) return zero_pass(r);
  if (c.s >= 1.0) return stop(r, Status::Vacuous, "RHS divergent for s >= 1; inequality vacuous");
  if (!s.supports_pairs()) return stop(r, Status::Error, "space " + s.descriptor() + " has no pair geometry");

  const double sq = c.s * c.q;
  if (pole_diverges(s, u, c.weights, c.q, sq))
    return stop(r, Status::LhsDivergent, "LHS diverges at the pole: u must vanish there to order > (sq-Q)/q");
  const RadialWeights rw(s, c.weights, RadialWeights::Kind::HardySobolev, c.p, c.q, cfg);
  try {
    r.lhs = integrate_over_space(
        s, u, [&](double rad, double uv) { return rw.A(rad) * std::pow(std::abs(uv), c.q) * std::pow(rad, -sq); },
        cfg);
  } catch (const DivergenceError& e) {
    return stop(r, Status::LhsDivergent, std::string("LHS diverges: ") + e.what());
  }
  r.notes.push_back("kernel=" + hs.kernel.form);
  try {
    r.rhs = hs_rhs(c, u, c.p, hs.kernel, cfg);
  } catch (const DivergenceError& e) {
    return stop(r, Status::Vacuous, std::string("RHS divergent; inequality vacuous: ") + e.what());
  }
  return finish(r);
}

VerificationReport verify_log_holder(const std::vector<double>& mass, const std::vector<double>& u, double p,
                                     double q) {
  VerificationReport r;
  r.theorem = Theorem::LogHolder;
  r.space = "discrete:" + std::to_string(mass.size());
  r.p = p;
  r.q = q;
  r.constant = {1.0, "paper_generic", "q/(q-p) log(||u||_q^p / ||u||_p^p)"};
  try {
    const LogHolderSums sums = log_holder_discrete(mass, u, p, q);
    r.lhs.value = sums.lhs;
    r.rhs.value = sums.rhs;
  } catch (const InvalidInput& e) {
    return stop(r, Status::Error, e.what());
  }
  r.ratio = std::exp(r.lhs.value - r.rhs.value);
  r.pass = r.lhs.value <= r.rhs.value + 1e-12 * (1.0 + std::abs(r.rhs.value));
  r.status = r.pass ? Status::Pass : Status::Fail;
  return r;
}

namespace {

// Entropy of |g|^p / ||g||_p^p and the norms it needs.
struct EntropyParts {
  IntegralResult Np, J;  // int g^p, int (g^p/N) log(g^p/N)
  double value = 0.0, error = 0.0;
};

EntropyParts entropy(const SpaceModel& s, const TestFunction& u, const std::function<double(double)>& factor,
                     double p, const QuadratureConfig& cfg) {
  EntropyParts e;
  e.Np = integrate_over_space(
      s, u, [&](double rad, double uv) { return std::pow(factor(rad) * std::abs(uv), p); }, cfg);
  require(e.Np.value > 0.0, "zero norm: u vanishes after weighting");
  // Integrating the normalized density keeps the result invariant under u -> cu.
  const double N = e.Np.value;
  e.J = integrate_over_space(
      s, u,
      [&](double rad, double uv) {
        const double g = std::pow(factor(rad) * std::abs(uv), p) / N;
        return g > 0.0 ? g * std::log(g) : 0.0;
      },
      cfg);
  e.value = e.J.value;
  const double eN = e.Np.error_estimate + e.Np.truncation_bound;
  const double eJ = e.J.error_estimate + e.J.truncation_bound;
  e.error = eJ + (std::abs(e.J.value) + 1.0) * eN / N;
  return e;
}

}  // namespace

VerificationReport verify_log_holder(const InequalityCase& c, const TestFunction& u, const QuadratureConfig& cfg) {
  VerificationReport r = base_report(c);
  require(static_cast<bool>(c.space), "case has no space");
  require(c.p > 1.0 && c.q > c.p && std::isfinite(c.q), "logarithmic Hölder needs 1 < p < q < inf");
  const SpaceModel& s = *c.space;
  r.constant = {1.0, "paper_generic", "q/(q-p) log(||u||_q^p / ||u||_p^p)"};
  if (u.is_zero()) return stop(r, Status::Error, "zero norm: u vanishes identically");
  try {
    u.validate_for(s.homogeneous_dimension(), c.p);
    const auto one = [](double) { return 1.0; };
    const EntropyParts e = entropy(s, u, one, c.p, cfg);
    const IntegralResult Nq =
        integrate_over_space(s, u, [&](double, double uv) { return std::pow(std::abs(uv), c.q); }, cfg);
    const double k = c.q / (c.q - c.p);
    r.lhs.value = e.value;
    r.lhs.error_estimate = e.error;
    r.rhs.value = k * std::log(std::pow(Nq.value, c.p / c.q) / e.Np.value);
    r.rhs.error_estimate = k * (c.p / c.q * (Nq.error_estimate + Nq.truncation_bound) / Nq.value +
                                (e.Np.error_estimate + e.Np.truncation_bound) / e.Np.value);
  } catch (const DivergenceError& ex) {
    return stop(r, Status::LhsDivergent, std::string("a norm diverges: ") + ex.what());
  }
  r.ratio = std::exp(r.lhs.value - r.rhs.value);
  r.pass = r.lhs.value + 3.0 * r.lhs.error_estimate <= r.rhs.value - 3.0 * r.rhs.error_estimate;
  r.status = r.pass ? Status::Pass : Status::Fail;
  return r;
}

VerificationReport verify_log_hardy_sobolev(const InequalityCase& c, const TestFunction& u,
                                            const QuadratureConfig& cfg) {
  VerificationReport r = base_report(c);
  check_space(c);
  require(c.q > c.p && std::isfinite(c.q), "logarithmic Hardy-Sobolev needs 1 < p < q < inf");
  const SpaceModel& s = *c.space;
  if (u.is_zero()) return stop(r, Status::Error, "zero norm: u vanishes identically");
  HsSetup hs;
  if (hs_setup(c, c.p, cfg, hs, r) != Status::Pass) return r;
  const double C_hs = hs.constant.value;
  r.constant = {std::pow(C_hs, c.p / c.q), hs.constant.provenance, "C_HS^{p/q}"};
  r.notes.push_back("C is the Hardy-Sobolev constant raised to p/q");
  if (c.s >= 1.0) return stop(r, Status::Vacuous, "RHS divergent for s >= 1; inequality vacuous");
  if (!s.supports_pairs()) return stop(r, Status::Error, "space " + s.descriptor() + " has no pair geometry");

  const double sq = c.s * c.q;
  if (pole_diverges(s, u, c.weights, c.q, sq))
    return stop(r, Status::LhsDivergent, "weighted q-norm diverges at the pole");
  const RadialWeights rw(s, c.weights, RadialWeights::Kind::HardySobolev, c.p, c.q, cfg);
  const auto factor = [&](double rad) { return std::pow(rw.A(rad), 1.0 / c.q) * std::pow(rad, -c.s); };
  EntropyParts e;
  IntegralResult Nq;
  try {
    e = entropy(s, u, factor, c.p, cfg);
    Nq = integrate_over_space(
        s, u, [&](double rad, double uv) { return std::pow(factor(rad) * std::abs(uv), c.q); }, cfg);
  } catch (const DivergenceError& ex) {
    return stop(r, Status::LhsDivergent, std::string("a weighted norm diverges: ") + ex.what());
  }
  IntegralResult R;
  try {
    R = hs_rhs(c, u, c.p, hs.kernel, cfg);
  } catch (const DivergenceError& ex) {
    return stop(r, Status::Vacuous, std::string("RHS divergent; inequality vacuous: ") + ex.what());
  }
  const double k = c.q / (c.q - c.p);
  const double Np = e.Np.value;
  const double eNp = e.Np.error_estimate + e.Np.truncation_bound;
  r.lhs.value = e.value;
  r.lhs.error_estimate = e.error;
  r.rhs.value = k * std::log(r.constant.value * std::pow(R.value, c.p / c.q) / Np);
  r.rhs.error_estimate = k * (c.p / c.q * (R.error_estimate + R.truncation_bound) / R.value + eNp / Np);
  r.rhs.samples_used = R.samples_used;
  r.extras["norm_p"] = Np;
  r.extras["norm_q"] = Nq.value;
  r.extras["hs_rhs"] = R.value;
  r.extras["hs_rhs_err"] = R.error_estimate;
  r.extras["holder_rhs"] = k * std::log(std::pow(Nq.value, c.p / c.q) / Np);
  r.ratio = std::exp(r.lhs.value - r.rhs.value);
  r.pass = r.lhs.value + 3.0 * r.lhs.error_estimate <= r.rhs.value - 3.0 * r.rhs.error_estimate;
  r.status = r.pass ? Status::Pass : Status::Fail;
  return r;
}

VerificationReport verify_nash(const InequalityCase& c, const TestFunction& u, const QuadratureConfig& cfg) {
  VerificationReport r = base_report(c);
  check_space(c);
  require(c.q > 2.0 && std::isfinite(c.q), "Nash-type inequality needs 2 < q < inf");
  const SpaceModel& s = *c.space;
  r.p = 2.0;
  r.notes.push_back("norms carry the weight |x|_a^{-s} and the inner exponent is 2");
  HsSetup hs;
  if (hs_setup(c, 2.0, cfg, hs, r) != Status::Pass) return r;
  const double q = c.q;
  r.constant = {std::pow(hs.constant.value, 2.0 / q), hs.constant.provenance, "C_HS^{2/q}"};
  if (u.is_zero()) return zero_pass(r);
  if (c.s >= 1.0) return stop(r, Status::Vacuous, "RHS divergent for s >= 1; inequality vacuous");
  if (!s.supports_pairs()) return stop(r, Status::Error, "space " + s.descriptor() + " has no pair geometry");
  if (pole_diverges(s, u, c.weights, q, c.s * q)) return stop(r, Status::LhsDivergent, "weighted q-norm diverges at the pole");

  InequalityCase c2 = c;
  c2.p = 2.0;
  const RadialWeights rw(s, c.weights, RadialWeights::Kind::HardySobolev, 2.0, q, cfg);
  const auto factor = [&](double rad) { return std::pow(rw.A(rad), 1.0 / q) * std::pow(rad, -c.s); };
  IntegralResult N1, N2;
  try {
    N1 = integrate_over_space(s, u, [&](double rad, double uv) { return factor(rad) * std::abs(uv); }, cfg);
    N2 = integrate_over_space(
        s, u, [&](double rad, double uv) { return std::pow(factor(rad) * std::abs(uv), 2.0); }, cfg);
  } catch (const DivergenceError& ex) {
    return stop(r, Status::LhsDivergent, std::string("a weighted norm diverges: ") + ex.what());
  }
  IntegralResult R;
  try {
    R = hs_rhs(c2, u, 2.0, hs.kernel, cfg);
  } catch (const DivergenceError& ex) {
    return stop(r, Status::Vacuous, std::string("RHS divergent; inequality vacuous: ") + ex.what());
  }
  r.lhs = pow_half(N2, 2.0 - 2.0 / q);
  const IntegralResult a = pow_half(R, 2.0 / q), b = pow_half(N1, 2.0 * (q - 2.0) / q);
  r.rhs.value = a.value * b.value;
  r.rhs.error_estimate = r.rhs.value * ((a.error_estimate + a.truncation_bound) / a.value +
                                        (b.error_estimate + b.truncation_bound) / b.value);
  r.rhs.samples_used = R.samples_used;
  r.extras["norm_1"] = N1.value;
  r.extras["norm_2_sq"] = N2.value;
  r.extras["hs_rhs"] = R.value;
  return finish(r);
}

VerificationReport verify_case(const InequalityCase& c, const QuadratureConfig& cfg) {
  try {
    require(static_cast<bool>(c.space), "case has no space");
    const TestFunction u = builtin(c.function_id);
    if (c.theorem != Theorem::IntegralHardy)
      u.validate_for(c.space->homogeneous_dimension(), c.p);
    switch (c.theorem) {
      case Theorem::IntegralHardy:
        return verify_integral_hardy(c, u, c.hardy_g, c.hardy_h, cfg);
      case Theorem::FractionalHardy:
      case Theorem::GroupHardy:
      case Theorem::HeisenbergHardy:
        return verify_fractional_hardy(c, u, cfg);
      case Theorem::FractionalHardySobolev:
      case Theorem::GroupHardySobolev:
      case Theorem::HeisenbergHardySobolev:
        return verify_fractional_hardy_sobolev(c, u, cfg);
      case Theorem::LogHolder:
        return verify_log_holder(c, u, cfg);
      case Theorem::LogHardySobolev:
        return verify_log_hardy_sobolev(c, u, cfg);
      case Theorem::NashType:
        return verify_nash(c, u, cfg);
    }
  } catch (const std::exception& e) {
    VerificationReport r = base_report(c);
    return stop(r, Status::Error, e.what());
  }
  VerificationReport r = base_report(c);
  return stop(r, Status::Error, "unhandled theorem");
}

}  // namespace hardy
