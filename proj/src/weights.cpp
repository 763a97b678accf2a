#include "hardy/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hardy/corpus.hpp"
#include "hardy/error.hpp"

namespace hardy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

QuadratureConfig ball_cfg(const QuadratureConfig& cfg) {
  QuadratureConfig c = cfg;
  c.truncation_radius = 0.0;
  c.diagonal_split = 0.0;
  c.rel_tolerance = std::min(cfg.rel_tolerance, 1e-10);
  return c;
}

double ball_integral(const SpaceModel& s, const std::function<double(double)>& f, double r,
                     const QuadratureConfig& cfg) {
  RadialHints hints;
  hints.support = r;
  hints.scale = r;
  return radial_integral(f, s, ball_cfg(cfg), hints).value;
}

std::function<double(double)> ball_function(const SpaceModel& s) {
  if (s.ball_model().closed_form || s.kind() == SpaceKind::RadialCustom)
    return [&s](double r) { return s.ball_volume(r); };
  auto cache = std::make_shared<LogCache>([&s](double r) { return s.ball_volume(r); }, 1e-6, 1e2);
  return [cache](double r) { return (*cache)(r); };
}

}  // namespace

double conjugate(double p) {
  require(p > 1.0, "exponent must exceed 1");
  return p / (p - 1.0);
}

RadialWeight parse_weight(const std::string& id) {
  std::vector<double> a;
  std::string name;
  std::string path;
  if (id.rfind("radial_table(", 0) == 0) {
    require(id.back() == ')', "malformed weight '" + id + "'");
    name = "radial_table";
    path = id.substr(13, id.size() - 14);
  } else {
    name = parse_call(id, a);
  }
  RadialWeight w;
  w.id = id;
  if (name == "unit") {
    require(a.empty(), "unit takes no arguments");
    return w;
  }
  w.unit = false;
  if (name == "const") {
    require(a.size() == 1 && a[0] > 0.0 && std::isfinite(a[0]), "const(c) needs c > 0");
    const double c = a[0];
    w.c = c;
    w.f = [c](double) { return c; };
    w.unit = c == 1.0;
    return w;
  }
  w.constant = false;
  if (name == "exp_decay") {
    require(a.size() == 1 && std::isfinite(a[0]), "exp_decay(k) needs a finite k");
    const double k = a[0];
    w.f = [k](double r) { return std::exp(-k * r); };
    return w;
  }
  if (name == "power") {
    require(a.size() == 1 && std::isfinite(a[0]), "power(g) needs a finite exponent");
    const double g = a[0];
    w.f = [g](double r) { return std::pow(r, g); };
    return w;
  }
  if (name == "radial_table") {
    std::ifstream in(path);
    require(in.good(), "cannot open weight table '" + path + "'");
    auto rs = std::make_shared<std::vector<double>>();
    auto vs = std::make_shared<std::vector<double>>();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      double r, v;
      require(static_cast<bool>(ls >> r >> v), path + ":" + std::to_string(lineno) + ": expected 'r w'");
      require(v > 0.0 && r >= 0.0, path + ":" + std::to_string(lineno) + ": need r >= 0 and w > 0");
      require(rs->empty() || r > rs->back(), path + ":" + std::to_string(lineno) + ": radii must increase");
      rs->push_back(r);
      vs->push_back(v);
    }
    require(!rs->empty(), "weight table '" + path + "' is empty");
    w.f = [rs, vs](double r) {
      if (r <= rs->front()) return vs->front();
      if (r >= rs->back()) return vs->back();
      const std::size_t j = std::upper_bound(rs->begin(), rs->end(), r) - rs->begin();
      const double t = (r - (*rs)[j - 1]) / ((*rs)[j] - (*rs)[j - 1]);
      return (*vs)[j - 1] + t * ((*vs)[j] - (*vs)[j - 1]);
    };
    return w;
  }
  throw InvalidInput("unknown weight family '" + id + "'");
}

double compute_A_hardy_at(const SpaceModel& s, const WeightSpec& w, double p, double r, const QuadratureConfig& cfg) {
  require(r > 0.0, "A(x) is undefined at the pole (empty ball)");
  const double pp = conjugate(p);
  if (w.v.constant && !w.force_numeric) return w.v.c;
  const double B = s.ball_volume(r);
  require(B > 0.0, "ball B(a, |x|_a) has zero measure");
  const double I = ball_integral(s, [&](double t) { return std::pow(w.v(t), 1.0 - pp); }, r, cfg);
  return std::pow(I / B, 1.0 - p);
}

double compute_A_hardy(const SpaceModel& s, const WeightSpec& w, double p, const SpacePoint& x,
                       const QuadratureConfig& cfg) {
  s.check_point(x);
  return compute_A_hardy_at(s, w, p, s.norm(x), cfg);
}

double compute_V_at(const SpaceModel& s, const WeightSpec& w, double r, const QuadratureConfig& cfg) {
  require(r > 0.0, "V(x) is undefined at the pole");
  if (w.v.constant && !w.force_numeric) return w.v.c * s.ball_volume(r);
  return ball_integral(s, [&](double t) { return w.v(t); }, r, cfg);
}

double compute_V(const SpaceModel& s, const WeightSpec& w, const SpacePoint& x, const QuadratureConfig& cfg) {
  s.check_point(x);
  return compute_V_at(s, w, s.norm(x), cfg);
}

double compute_A_hs_at(const SpaceModel& s, const WeightSpec& w, double p, double q, double r,
                       const QuadratureConfig& cfg) {
  require(r > 0.0, "A(x) is undefined at the pole (empty ball)");
  require(q > 1.0, "q must exceed 1");
  const double pp = conjugate(p);
  if (w.v.constant && w.z.constant && !w.force_numeric) return w.v.c * std::pow(w.z.c, q / p);
  const double B = s.ball_volume(r);
  require(B > 0.0, "ball B(a, |x|_a) has zero measure");
  const double J = ball_integral(
      s, [&](double t) { return std::pow(std::pow(w.v(t), p) / w.z(t), 1.0 / (p - 1.0)); }, r, cfg);
  const double V = compute_V_at(s, w, r, cfg);
  // Combine in logs: the three ball powers cancel for unit weights.
  const double logA = -q / p * std::log(B) - q / pp * std::log(J) + q * std::log(V) + std::log(w.v(r));
  return std::exp(logA);
}

double compute_A_hs(const SpaceModel& s, const WeightSpec& w, double p, double q, const SpacePoint& x,
                    const QuadratureConfig& cfg) {
  s.check_point(x);
  return compute_A_hs_at(s, w, p, q, s.norm(x), cfg);
}

LogCache::LogCache(std::function<double(double)> f, double lo, double hi, int per_decade)
    : f_(std::move(f)), lo_(lo), hi_(hi) {
  const int n = std::max(4, static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade)) + 1);
  step_ = std::log(hi / lo) / (n - 1);
  logf_.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v = f_(lo * std::exp(i * step_));
    if (!(v > 0.0) || !std::isfinite(v)) {
      usable_ = false;
      return;
    }
    logf_[i] = std::log(v);
  }
}

double LogCache::operator()(double r) const {
  if (!usable_ || !(r >= lo_ && r <= hi_)) return f_(r);
  const double t = std::log(r / lo_) / step_;
  const int n = static_cast<int>(logf_.size());
  int i = std::clamp(static_cast<int>(std::floor(t)) - 1, 0, n - 4);
  const double x = t - i;  // nodes at 0, 1, 2, 3
  const double l0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
  const double l1 = x * (x - 2) * (x - 3) / 2.0;
  const double l2 = -x * (x - 1) * (x - 3) / 2.0;
  const double l3 = x * (x - 1) * (x - 2) / 6.0;
  return std::exp(l0 * logf_[i] + l1 * logf_[i + 1] + l2 * logf_[i + 2] + l3 * logf_[i + 3]);
}

RadialWeights::RadialWeights(const SpaceModel& s, const WeightSpec& w, Kind kind, double p, double q,
                             const QuadratureConfig& cfg)
    : s_(&s), w_(w) {
  const bool constant = !w.force_numeric && w.v.constant && (kind == Kind::Hardy || w.z.constant);
  if (constant) {
    a_constant_ = true;
    a_const_ = kind == Kind::Hardy ? w.v.c : w.v.c * std::pow(w.z.c, q / p);
    a_one_ = a_const_ == 1.0;
  } else if (kind == Kind::Hardy) {
    a_ = std::make_shared<LogCache>([&s, w, p, cfg](double r) { return compute_A_hardy_at(s, w, p, r, cfg); },
                                    1e-6, 1e6, 24);
  } else {
    a_ = std::make_shared<LogCache>(
        [&s, w, p, q, cfg](double r) { return compute_A_hs_at(s, w, p, q, r, cfg); }, 1e-6, 1e6, 24);
  }
  if (kind == Kind::HardySobolev && !(w.v.constant && !w.force_numeric))
    v_ = std::make_shared<LogCache>([&s, w, cfg](double r) { return compute_V_at(s, w, r, cfg); }, 1e-6, 1e6, 24);
}

double RadialWeights::A(double r) const {
  if (a_constant_) return a_const_;
  return (*a_)(std::max(r, 1e-12));
}

double RadialWeights::V(double r) const {
  if (v_) return (*v_)(r);
  return w_.v.c * s_->ball_volume(r);
}

AdmissibilityReport compute_D1_numeric(const SpaceModel& s, const std::function<double(double)>& g,
                                       const std::function<double(double)>& h, double p, double q,
                                       const QuadratureConfig& cfg) {
  require(p > 1.0 && q >= p && std::isfinite(q), "D1 needs 1 < p <= q < inf");
  cfg.validate();
  const double pp = conjugate(p);
  Tolerance tol = cfg.tolerance();
  const double S = s.sphere_measure();
  AdmissibilityReport rep;
  rep.method = "numeric_radial";

  auto eval = [&](double r, double& err) {
    double out = 0.0, out_err = 0.0, in = 0.0, in_err = 0.0;
    if (S > 0.0) {
      auto fo = [&](double t) {
        const double l = s.polar_weight(t);
        return l == 0.0 ? 0.0 : l * g(t);
      };
      auto fi = [&](double t) {
        const double l = s.polar_weight(t);
        return l == 0.0 ? 0.0 : l * std::pow(h(t), 1.0 - pp);
      };
      const IntegralResult o = integrate_to_infinity(fo, r, tol);
      const IntegralResult i = integrate_from_zero(fi, r, tol);
      out = S * o.value;
      out_err = S * (o.error_estimate + o.truncation_bound);
      in = S * i.value;
      in_err = S * (i.error_estimate + i.truncation_bound);
    }
    for (const Atom& a : s.atoms()) {
      if (a.radius >= r) out += a.mass * g(a.radius);
      else in += a.mass * std::pow(h(a.radius), 1.0 - pp);
    }
    if (!std::isfinite(out) || !std::isfinite(in)) throw DivergenceError("D1 factor is infinite");
    if (out <= 0.0 || in <= 0.0) {
      err = 0.0;
      return 0.0;
    }
    const double d = std::pow(out, 1.0 / q) * std::pow(in, 1.0 / pp);
    err = d * (out_err / (q * out) + in_err / (pp * in));
    return d;
  };

  double best = -1.0, best_err = 0.0, best_r = 0.0;
  auto consider = [&](double r) {
    double e = 0.0;
    const double d = eval(r, e);
    if (d > best) {
      best = d;
      best_err = e;
      best_r = r;
    }
    return d;
  };

  try {
    if (S > 0.0) {
      const double R = cfg.truncation_radius > 0.0 ? cfg.truncation_radius : 100.0;
      const double lo = 1e-4 * R;
      constexpr int kScan = 64;
      std::vector<double> rs(kScan), ds(kScan);
      for (int i = 0; i < kScan; ++i) {
        rs[i] = lo * std::pow(R / lo, double(i) / (kScan - 1));
        ds[i] = consider(rs[i]);
      }
      const auto mx = std::max_element(ds.begin(), ds.end());
      const auto mn = std::min_element(ds.begin(), ds.end());
      const int im = static_cast<int>(mx - ds.begin());
      const bool flat = *mx - *mn <= 1e-9 * std::abs(*mx);
      if (!flat) {
        if (im == 0 || im == kScan - 1)
          rep.warnings.push_back("sup sits on the bracket boundary r=" + std::to_string(rs[im]) +
                                 "; D1 may be larger outside the bracket");
        const double a = std::log(rs[std::max(im - 1, 0)]);
        const double b = std::log(rs[std::min(im + 1, kScan - 1)]);
        double val = 0.0;
        const double t = golden_section_max(
            [&](double lt) {
              double e = 0.0;
              return eval(std::exp(lt), e);
            },
            a, b, 1e-7, val);
        consider(std::exp(t));
      }
    }
    for (const Atom& a : s.atoms())
      if (a.radius > 0.0) consider(a.radius);
  } catch (const DivergenceError& e) {
    rep.D1 = kInf;
    rep.smallness = kInf;
    rep.finite = false;
    rep.admissible = false;
    rep.warnings.push_back(std::string("D1 diverges: ") + e.what());
    return rep;
  }
  rep.D1 = std::max(best, 0.0);
  rep.D1_err = best_err;
  rep.argmax_radius = best_r;
  const double factor = std::pow(pp, 1.0 / pp) * std::pow(p, 1.0 / q);
  rep.smallness = factor * rep.D1;
  rep.smallness_err = factor * rep.D1_err;
  rep.admissible = rep.smallness + 3.0 * rep.smallness_err < 1.0;
  return rep;
}

AdmissibilityReport d1_fractional_hardy(const SpaceModel& s, const WeightSpec& w, double sv, double p,
                                        const QuadratureConfig& cfg) {
  require(sv > 0.0, "s must be positive");
  const RadialWeights rw(s, w, RadialWeights::Kind::Hardy, p, p, cfg);
  const auto ball = ball_function(s);
  auto g = [&](double r) { return rw.A(r) / (std::pow(r, sv * p) * std::pow(ball(r), p)); };
  auto h = [&](double r) { return rw.A(r) / std::pow(r, sv * p); };
  return compute_D1_numeric(s, g, h, p, p, cfg);
}

AdmissibilityReport d1_hardy_sobolev(const SpaceModel& s, const WeightSpec& w, double sv, double p, double q,
                                     const QuadratureConfig& cfg) {
  require(sv > 0.0, "s must be positive");
  const RadialWeights rw(s, w, RadialWeights::Kind::HardySobolev, p, q, cfg);
  auto g = [&](double r) { return rw.A(r) / (std::pow(r, sv * q) * std::pow(rw.V(r), q)); };
  auto h = [&](double r) { return rw.A(r) * std::pow(w.v(r), -q) / std::pow(r, sv * q); };
  return compute_D1_numeric(s, g, h, q, q, cfg);
}

AdmissibilityReport closed_form_D1_homogeneous(double Q, double s, double p) {
  require(Q > 0.0 && s > 0.0 && p > 1.0 && std::isfinite(Q) && std::isfinite(s) && std::isfinite(p),
          "closed form D1 needs Q, s > 0 and p > 1");
  const double pp = conjugate(p);
  const double denom = s * p + Q * p - Q;
  AdmissibilityReport rep;
  rep.method = "closed_form";
  rep.D1 = Q * std::pow(p - 1.0, 1.0 / pp) / denom;
  rep.smallness = Q * p / denom;
  // (p')^{1/p'} p^{1/p} (p-1)^{1/p'} = p turns D1 into the smallness value.
  const double lhs = std::pow(pp, 1.0 / pp) * std::pow(p, 1.0 / p) * std::pow(p - 1.0, 1.0 / pp);
  if (std::abs(lhs - p) > 1e-12 * p) throw std::logic_error("closed form identity failed");
  const double via_d1 = std::pow(pp, 1.0 / pp) * std::pow(p, 1.0 / p) * rep.D1;
  if (std::abs(via_d1 - rep.smallness) > 1e-12 * rep.smallness)
    throw std::logic_error("closed form smallness mismatch");
  // A floating tie sp == Q may round either way; treat it as the boundary.
  rep.admissible = s * p - Q > 1e-12 * Q;
  return rep;
}

ExactSmallness closed_form_smallness_exact(Rational Q, Rational s, Rational p) {
  require(Q > 0 && s > 0 && p > 1, "exact smallness needs Q, s > 0 and p > 1");
  const Rational sm = Q * p / (s * p + Q * p - Q);
  return {sm, sm < Rational(1)};
}

}  // namespace hardy
