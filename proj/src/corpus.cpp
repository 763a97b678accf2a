#include "hardy/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double smooth_bump(double t) {
  if (t >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

// max |phi'| on [0, hi] by difference quotients, padded by 2%.
double lipschitz_scan(const std::function<double(double)>& phi, double hi) {
  constexpr int kN = 40000;
  double best = 0.0;
  double prev = phi(0.0);
  for (int i = 1; i <= kN; ++i) {
    const double r = hi * i / kN;
    const double cur = phi(r);
    best = std::max(best, std::abs(cur - prev) / (hi / kN));
    prev = cur;
  }
  return 1.02 * best + 1e-12;
}

// Running sup from the right on a log grid; beyond the grid phi is monotone.
std::function<double(double)> envelope_of(const std::function<double(double)>& phi, double far) {
  constexpr int kN = 3000;
  auto grid = std::make_shared<std::vector<double>>(kN);
  auto sup = std::make_shared<std::vector<double>>(kN);
  const double lo = 1e-8 * far;
  for (int i = 0; i < kN; ++i) (*grid)[i] = lo * std::pow(far / lo, double(i) / (kN - 1));
  double m = std::abs(phi(far));
  for (int i = kN - 1; i >= 0; --i) {
    m = std::max(m, std::abs(phi((*grid)[i])));
    (*sup)[i] = m;
  }
  const double head = std::max((*sup)[0], std::abs(phi(0.0)));
  return [grid, sup, phi, far, head](double r) {
    if (r >= far) return std::abs(phi(r));
    if (r <= grid->front()) return head;
    auto it = std::upper_bound(grid->begin(), grid->end(), r);
    const std::size_t j = (it - grid->begin()) - 1;  // grid[j] <= r
    return 1.000001 * (*sup)[j];
  };
}

void check_order(double m) {
  require(std::isfinite(m) && (m == 0.0 || m >= 1.0),
          "vanishing order must be 0 or >= 1 (Lipschitz at the pole)");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void finish_radial(TestFunction& f, double scan_hi, double far) {
  f.lipschitz_bound = lipschitz_scan(f.profile, scan_hi);
  f.envelope = envelope_of(f.profile, far);
  double m = 0.0;
  for (int i = 0; i <= 20000; ++i) m = std::max(m, std::abs(f.profile(scan_hi * i / 20000.0)));
  f.amplitude = m;
}

}  // namespace

std::string parse_call(const std::string& text, std::vector<double>& args) {
  args.clear();
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  const auto open = t.find('(');
  if (open == std::string::npos) return t;
  require(t.back() == ')', "malformed call '" + text + "'");
  std::stringstream ss(t.substr(open + 1, t.size() - open - 2));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      args.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidInput("bad argument '" + tok + "' in '" + text + "'");
    }
  }
  return t.substr(0, open);
}

double TestFunction::eval(const SpaceModel& s, const SpacePoint& x) const {
  if (radial) return profile(s.norm(x));
  double v = 0.0;
  for (const Bump& b : bumps) {
    SpacePoint c(s.dim());
    c[0] = b.center;
    v += b.amplitude * smooth_bump(s.distance(x, c) / b.radius);
  }
  return v;
}

double TestFunction::support_in(const SpaceModel& s) const {
  if (radial) return support_radius;
  double r = 0.0;
  for (const Bump& b : bumps) {
    SpacePoint c(s.dim());
    c[0] = b.center;
    r = std::max(r, s.norm(c) + b.radius);
  }
  return r;
}

double TestFunction::envelope_in(const SpaceModel& s, double r) const {
  if (radial) return envelope(r);
  return r < support_in(s) ? envelope(r) : 0.0;
}

TestFunction TestFunction::scaled(double c) const {
  TestFunction f = *this;
  f.id = fmt(c) + "*" + id;
  const double ac = std::abs(c);
  if (radial) {
    auto p = profile;
    f.profile = [p, c](double r) { return c * p(r); };
  }
  for (Bump& b : f.bumps) b.amplitude *= c;
  auto e = envelope;
  f.envelope = [e, ac](double r) { return ac * e(r); };
  f.lipschitz_bound *= ac;
  f.amplitude *= ac;
  for (auto& [k, v] : f.closed_forms) {
    // Only the L2-squared closed forms are kept; they scale by c^2.
    v *= c * c;
  }
  return f;
}

TestFunction TestFunction::dilated(double lam) const {
  require(radial, "dilated() needs a radial function");
  require(lam > 0.0, "dilation factor must be positive");
  TestFunction f = *this;
  f.id = id + "@" + fmt(lam);
  auto p = profile;
  f.profile = [p, lam](double r) { return p(lam * r); };
  auto e = envelope;
  f.envelope = [e, lam](double r) { return e(lam * r); };
  f.lipschitz_bound *= lam;
  f.support_radius /= lam;
  f.core_radius /= lam;
  f.closed_forms.clear();
  return f;
}

void TestFunction::validate_for(double Q, double p) const {
  if (std::isfinite(support_radius) || is_zero()) return;
  if (family == "constant") throw InvalidInput("constant functions have infinite L^p norm");
  if (std::isfinite(decay_power) && !(decay_power * p > Q))
    throw InvalidInput(id + ": decay power k=" + fmt(decay_power) + " needs k*p > Q=" + fmt(Q));
}

TestFunction builtin(const std::string& id) {
  std::vector<double> a;
  const std::string name = parse_call(id, a);
  TestFunction f;
  f.family = name;
  auto nargs = [&](std::size_t lo, std::size_t hi) {
    require(a.size() >= lo && a.size() <= hi,
            "'" + name + "' takes " + std::to_string(lo) + ".." + std::to_string(hi) + " arguments");
  };
  if (name == "zero") {
    nargs(0, 0);
    f.id = "zero";
    f.profile = [](double) { return 0.0; };
    f.envelope = [](double) { return 0.0; };
    f.support_radius = 0.0;
    return f;
  }
  if (name == "constant") {
    nargs(1, 1);
    const double c = a[0];
    f.id = "constant(" + fmt(c) + ")";
    f.profile = [c](double) { return c; };
    f.envelope = [c](double) { return std::abs(c); };
    f.amplitude = std::abs(c);
    f.decay_power = 0.0;
    return f;
  }
  if (name == "gaussian") {
    nargs(1, 2);
    const double sigma = a[0];
    const double m = a.size() > 1 ? a[1] : 0.0;
    require(sigma > 0.0 && std::isfinite(sigma), "gaussian width must be positive");
    check_order(m);
    f.id = "gaussian(" + fmt(sigma) + (m > 0 ? "," + fmt(m) : "") + ")";
    f.profile = [sigma, m](double r) {
      const double t = r / sigma;
      return (m > 0 ? std::pow(t, m) : 1.0) * std::exp(-t * t);
    };
    f.vanishing_order = m;
    f.core_radius = sigma * (1.5 + std::sqrt(0.5 * m));
    finish_radial(f, 12.0 * f.core_radius, 12.0 * f.core_radius);
    // On the line: int |u|^2 = sigma * Gamma(m + 1/2) / 2^{m + 1/2}.
    f.closed_forms["l2sq_line"] = sigma * std::tgamma(m + 0.5) / std::pow(2.0, m + 0.5);
    return f;
  }
  if (name == "power_decay") {
    nargs(1, 2);
    const double k = a[0];
    const double m = a.size() > 1 ? a[1] : 0.0;
    require(k > 0.0 && std::isfinite(k), "power_decay exponent must be positive");
    check_order(m);
    f.id = "power_decay(" + fmt(k) + (m > 0 ? "," + fmt(m) : "") + ")";
    f.profile = [k, m](double r) {
      return (m > 0 ? std::pow(r / (1.0 + r), m) : 1.0) * std::pow(1.0 + r * r, -0.5 * k);
    };
    f.vanishing_order = m;
    f.decay_power = k;
    f.core_radius = 2.0 + m;
    finish_radial(f, 40.0, 200.0);
    return f;
  }
  if (name == "bump") {
    nargs(1, 2);
    const double r0 = a[0];
    const double m = a.size() > 1 ? a[1] : 0.0;
    require(r0 > 0.0 && std::isfinite(r0), "bump radius must be positive");
    check_order(m);
    f.id = "bump(" + fmt(r0) + (m > 0 ? "," + fmt(m) : "") + ")";
    f.profile = [r0, m](double r) {
      const double t = r / r0;
      return (m > 0 ? std::pow(t, m) : 1.0) * smooth_bump(t);
    };
    f.vanishing_order = m;
    f.support_radius = r0;
    f.core_radius = r0;
    finish_radial(f, r0, r0);
    return f;
  }
  if (name == "ramp_indicator") {
    nargs(2, 3);
    const double r0 = a[0], eps = a[1];
    const double m = a.size() > 2 ? a[2] : 0.0;
    require(r0 > 0.0 && std::isfinite(r0), "ramp_indicator radius must be positive");
    require(eps > 0.0 && std::isfinite(eps), "ramp_indicator needs eps > 0 (an exact indicator is not Lipschitz)");
    check_order(m);
    f.id = "ramp_indicator(" + fmt(r0) + "," + fmt(eps) + (m > 0 ? "," + fmt(m) : "") + ")";
    f.profile = [r0, eps, m](double r) {
      const double ramp = std::clamp((r0 + eps - r) / eps, 0.0, 1.0);
      return (m > 0 ? std::pow(std::min(r / r0, 1.0), m) : 1.0) * ramp;
    };
    f.vanishing_order = m;
    f.support_radius = r0 + eps;
    f.core_radius = r0 + eps;
    finish_radial(f, r0 + eps, r0 + eps);
    return f;
  }
  if (name == "two_bump") {
    nargs(1, 1);
    const double sep = a[0];
    require(sep > 0.0 && std::isfinite(sep), "two_bump separation must be positive");
    f.id = "two_bump(" + fmt(sep) + ")";
    f.radial = false;
    f.bumps = {{0.5 * sep, 1.0, 1.0}, {-0.5 * sep, 0.5, 1.0}};
    f.lipschitz_bound = 1.5 * lipschitz_scan(smooth_bump, 1.0);
    f.amplitude = 1.0;
    // Support bound uses |x|_a <= |c|_a + d(x, c); the centre's gauge is
    // bounded by sep/2 in every implemented model with unit first weight and
    // is recomputed by callers that know the space.
    f.core_radius = 0.5 * sep + 1.0;
    f.support_radius = kInf;
    f.envelope = [](double) { return 1.5; };
    return f;
  }
  throw InvalidInput("unknown corpus function '" + id + "'");
}

std::vector<std::string> default_corpus_ids() {
  return {"gaussian(1,1)", "gaussian(0.7,2)", "power_decay(3,1)", "bump(1.5,1)", "ramp_indicator(1,0.5,1)",
          "two_bump(3)"};
}

}  // namespace hardy
