#include "hardy/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {
namespace {

double unit_sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

SpacePoint gaussian_direction(std::size_t n, Rng& rng) {
  SpacePoint d(n);
  double s = 0.0;
  do {
    s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = standard_normal(rng);
      s += d[i] * d[i];
    }
  } while (s == 0.0);
  const double inv = 1.0 / std::sqrt(s);
  for (std::size_t i = 0; i < n; ++i) d[i] *= inv;
  return d;
}

double euclid_norm(const SpacePoint& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

const std::vector<Atom> kNoAtoms;

// Uniform sample of the unit quasi-ball by rejection from the box [-1,1]^n,
// dilated back to the unit sphere. Used for gauges with no simpler sampler.
template <class Norm, class Dilate>
SpacePoint sphere_by_rejection(std::size_t n, Rng& rng, Norm norm, Dilate dilate) {
  for (;;) {
    SpacePoint p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = 2.0 * uniform01(rng) - 1.0;
    const double r = norm(p);
    if (r < 1.0 && r > 1e-3) return dilate(p, 1.0 / r);
  }
}

// ---------------------------------------------------------------- Euclidean
class Euclidean final : public SpaceModel {
 public:
  explicit Euclidean(int n) : n_(n), sphere_(unit_sphere_area(n)) {
    require(n >= 1 && n <= static_cast<int>(SpacePoint::kMaxDim), "euclidean dimension out of range");
  }
  SpaceKind kind() const override { return SpaceKind::Euclidean; }
  std::string descriptor() const override { return "euclidean:" + std::to_string(n_); }
  std::size_t dim() const override { return n_; }
  double homogeneous_dimension() const override { return n_; }
  double sphere_measure() const override { return sphere_; }
  double polar_weight(double r) const override { return std::pow(r, n_ - 1); }
  BallVolumeModel ball_model() const override { return {true, sphere_ / n_, double(n_)}; }
  double distance(const SpacePoint& x, const SpacePoint& y) const override {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
  }
  double norm(const SpacePoint& x) const override { return euclid_norm(x); }
  SpacePoint sample_direction(Rng& rng) const override {
    if (n_ == 1) return SpacePoint{uniform01(rng) < 0.5 ? -1.0 : 1.0};
    return gaussian_direction(n_, rng);
  }
  SpacePoint from_polar(double r, const SpacePoint& dir) const override {
    SpacePoint p(n_);
    for (int i = 0; i < n_; ++i) p[i] = r * dir[i];
    return p;
  }
  SpacePoint offset(const SpacePoint& x, double rho, const SpacePoint& dir) const override {
    SpacePoint p(n_);
    for (int i = 0; i < n_; ++i) p[i] = x[i] + rho * dir[i];
    return p;
  }

 private:
  int n_;
  double sphere_;
};

// --------------------------------------------------------- HomogeneousGroup
class AbelianGroup final : public SpaceModel {
 public:
  AbelianGroup(std::vector<double> weights, GroupNorm norm) : nu_(std::move(weights)), norm_(norm) {
    require(!nu_.empty() && nu_.size() <= SpacePoint::kMaxDim, "group needs 1..16 dilation weights");
    Q_ = 0.0;
    bool unit = true;
    for (double v : nu_) {
      require(std::isfinite(v) && v >= 1.0,
              "dilation weights must be >= 1 so that the gauge is subadditive");
      Q_ += v;
      unit = unit && v == 1.0;
    }
    require(norm_ != GroupNorm::Euclidean || unit, "euclidean gauge requires unit dilation weights");
    const double n = static_cast<double>(nu_.size());
    double unit_ball = 0.0;
    switch (norm_) {
      case GroupNorm::Max:
        unit_ball = std::pow(2.0, n);
        break;
      case GroupNorm::Sum: {
        // Dirichlet integral: |{sum t_i^{1/nu_i} < 1, t >= 0}| = prod Gamma(1+nu_i) / Gamma(1+Q).
        double lg = -std::lgamma(1.0 + Q_);
        for (double v : nu_) lg += std::lgamma(1.0 + v);
        unit_ball = std::pow(2.0, n) * std::exp(lg);
        break;
      }
      case GroupNorm::Euclidean:
        unit_ball = unit_sphere_area(static_cast<int>(n)) / n;
        break;
    }
    sphere_ = Q_ * unit_ball;
  }
  SpaceKind kind() const override { return SpaceKind::HomogeneousGroup; }
  std::string descriptor() const override {
    bool unit = std::all_of(nu_.begin(), nu_.end(), [](double v) { return v == 1.0; });
    if (unit && norm_ == GroupNorm::Euclidean) return "group:Q=" + std::to_string(nu_.size());
    std::string s = "group:weights=";
    for (std::size_t i = 0; i < nu_.size(); ++i) s += (i ? "," : "") + fmt_num(nu_[i]);
    return s + ";norm=" + to_string(norm_);
  }
  std::size_t dim() const override { return nu_.size(); }
  double homogeneous_dimension() const override { return Q_; }
  double sphere_measure() const override { return sphere_; }
  double polar_weight(double r) const override { return std::pow(r, Q_ - 1.0); }
  BallVolumeModel ball_model() const override { return {true, sphere_ / Q_, Q_}; }
  double distance(const SpacePoint& x, const SpacePoint& y) const override {
    SpacePoint d(nu_.size());
    for (std::size_t i = 0; i < nu_.size(); ++i) d[i] = x[i] - y[i];
    return norm(d);
  }
  double norm(const SpacePoint& x) const override {
    switch (norm_) {
      case GroupNorm::Max: {
        double m = 0.0;
        for (std::size_t i = 0; i < nu_.size(); ++i) m = std::max(m, std::pow(std::abs(x[i]), 1.0 / nu_[i]));
        return m;
      }
      case GroupNorm::Sum: {
        double s = 0.0;
        for (std::size_t i = 0; i < nu_.size(); ++i) s += std::pow(std::abs(x[i]), 1.0 / nu_[i]);
        return s;
      }
      case GroupNorm::Euclidean:
        return euclid_norm(x);
    }
    return 0.0;
  }
  SpacePoint dilate(const SpacePoint& x, double lam) const {
    SpacePoint p(nu_.size());
    for (std::size_t i = 0; i < nu_.size(); ++i) p[i] = std::pow(lam, nu_[i]) * x[i];
    return p;
  }
  SpacePoint sample_direction(Rng& rng) const override {
    if (norm_ == GroupNorm::Euclidean) {
      if (nu_.size() == 1) return SpacePoint{uniform01(rng) < 0.5 ? -1.0 : 1.0};
      return gaussian_direction(nu_.size(), rng);
    }
    return sphere_by_rejection(
        nu_.size(), rng, [this](const SpacePoint& p) { return norm(p); },
        [this](const SpacePoint& p, double lam) { return dilate(p, lam); });
  }
  SpacePoint from_polar(double r, const SpacePoint& dir) const override { return dilate(dir, r); }
  SpacePoint offset(const SpacePoint& x, double rho, const SpacePoint& dir) const override {
    SpacePoint w = dilate(dir, rho);
    for (std::size_t i = 0; i < nu_.size(); ++i) w[i] += x[i];
    return w;
  }

 private:
  std::vector<double> nu_;
  GroupNorm norm_;
  double Q_ = 0.0;
  double sphere_ = 0.0;
};

// --------------------------------------------------------------- Heisenberg
class Heisenberg final : public SpaceModel {
 public:
  Heisenberg(int n, double beta) : n_(n), beta_(beta) {
    require(n >= 1 && 2 * n + 1 <= static_cast<int>(SpacePoint::kMaxDim), "heisenberg n out of range");
    require(std::isfinite(beta) && beta >= 1.0, "beta must be >= 1");
    omega_ = heisenberg_unit_ball_volume(n);
  }
  SpaceKind kind() const override { return SpaceKind::Heisenberg; }
  std::string descriptor() const override {
    std::string s = "heisenberg:" + std::to_string(n_);
    if (beta_ != 1.0) s += ";beta=" + fmt_num(beta_);
    return s;
  }
  std::size_t dim() const override { return 2 * n_ + 1; }
  double homogeneous_dimension() const override { return 2.0 * n_ + 2.0; }
  double sphere_measure() const override { return homogeneous_dimension() * omega_; }
  double quasi_triangle_beta() const override { return beta_; }
  double polar_weight(double r) const override { return std::pow(r, homogeneous_dimension() - 1.0); }
  BallVolumeModel ball_model() const override { return {true, omega_, homogeneous_dimension()}; }
  double distance(const SpacePoint& x, const SpacePoint& y) const override {
    return koranyi_norm(heisenberg_compose(heisenberg_inverse(y), x, n_), n_);
  }
  double norm(const SpacePoint& x) const override { return koranyi_norm(x, n_); }
  SpacePoint dilate(const SpacePoint& x, double lam) const {
    SpacePoint p = x;
    for (int i = 0; i < 2 * n_; ++i) p[i] *= lam;
    p[2 * n_] *= lam * lam;
    return p;
  }
  SpacePoint sample_direction(Rng& rng) const override {
    return sphere_by_rejection(
        dim(), rng, [this](const SpacePoint& p) { return norm(p); },
        [this](const SpacePoint& p, double lam) { return dilate(p, lam); });
  }
  SpacePoint from_polar(double r, const SpacePoint& dir) const override { return dilate(dir, r); }
  SpacePoint offset(const SpacePoint& x, double rho, const SpacePoint& dir) const override {
    // y = x o delta_rho(dir): d(x, y) = |y^{-1} x| = |w^{-1}| = rho, dy = dw.
    return heisenberg_compose(x, dilate(dir, rho), n_);
  }

 private:
  int n_;
  double beta_;
  double omega_ = 0.0;
};

// --------------------------------------------------------------- Hyperbolic
// Points are stored in exponential coordinates at the pole: x = r * omega
// represents the point at geodesic distance r in direction omega.
class Hyperbolic final : public SpaceModel {
 public:
  explicit Hyperbolic(int n) : n_(n), sphere_(unit_sphere_area(n)) {
    require(n >= 1 && n + 1 <= static_cast<int>(SpacePoint::kMaxDim), "hyperbolic dimension out of range");
  }
  SpaceKind kind() const override { return SpaceKind::Hyperbolic; }
  std::string descriptor() const override { return "hyperbolic:" + std::to_string(n_); }
  std::size_t dim() const override { return n_; }
  double homogeneous_dimension() const override { return n_; }
  double sphere_measure() const override { return sphere_; }
  double polar_weight(double r) const override { return std::pow(std::sinh(r), n_ - 1); }
  BallVolumeModel ball_model() const override {
    if (n_ == 1) return {true, 2.0, 1.0};
    return {false, 0.0, 0.0};
  }
  double ball_volume(double r) const override {
    require(r >= 0.0, "ball radius must be nonnegative");
    if (r == 0.0) return 0.0;
    switch (n_) {
      case 1: return 2.0 * r;
      case 2: return sphere_ * (std::cosh(r) - 1.0);
      case 3: return sphere_ * 0.5 * (std::sinh(r) * std::cosh(r) - r);
      default: break;
    }
    return SpaceModel::ball_volume(r);
  }
  // Hyperboloid lift (x0, x_vec) of a chart point.
  void lift(const SpacePoint& x, double* X) const {
    const double r = euclid_norm(x);
    X[0] = std::cosh(r);
    const double f = r > 0.0 ? std::sinh(r) / r : 1.0;
    for (int i = 0; i < n_; ++i) X[i + 1] = f * x[i];
  }
  SpacePoint unlift(const double* X) const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += X[i + 1] * X[i + 1];
    const double sv = std::sqrt(s);
    const double r = std::asinh(sv);
    SpacePoint p(n_);
    const double f = sv > 0.0 ? r / sv : 1.0;
    for (int i = 0; i < n_; ++i) p[i] = f * X[i + 1];
    return p;
  }
  double distance(const SpacePoint& x, const SpacePoint& y) const override {
    double X[SpacePoint::kMaxDim], Y[SpacePoint::kMaxDim];
    lift(x, X);
    lift(y, Y);
    // |X - Y|_M = 2 sinh(d / 2) for points on the hyperboloid.
    double m = -(X[0] - Y[0]) * (X[0] - Y[0]);
    for (int i = 1; i <= n_; ++i) m += (X[i] - Y[i]) * (X[i] - Y[i]);
    return 2.0 * std::asinh(0.5 * std::sqrt(std::max(m, 0.0)));
  }
  double norm(const SpacePoint& x) const override { return euclid_norm(x); }
  SpacePoint sample_direction(Rng& rng) const override {
    if (n_ == 1) return SpacePoint{uniform01(rng) < 0.5 ? -1.0 : 1.0};
    return gaussian_direction(n_, rng);
  }
  SpacePoint from_polar(double r, const SpacePoint& dir) const override {
    SpacePoint p(n_);
    for (int i = 0; i < n_; ++i) p[i] = r * dir[i];
    return p;
  }
  SpacePoint offset(const SpacePoint& x, double rho, const SpacePoint& dir) const override {
    // Transport the unit tangent `dir` from the pole to x with the boost
    // taking the pole to x, then follow the geodesic for length rho.
    double X[SpacePoint::kMaxDim], V[SpacePoint::kMaxDim], Y[SpacePoint::kMaxDim];
    lift(x, X);
    double xd = 0.0;
    for (int i = 0; i < n_; ++i) xd += X[i + 1] * dir[i];
    V[0] = xd;
    for (int i = 0; i < n_; ++i) V[i + 1] = dir[i] + xd / (1.0 + X[0]) * X[i + 1];
    const double c = std::cosh(rho), s = std::sinh(rho);
    for (int i = 0; i <= n_; ++i) Y[i] = c * X[i] + s * V[i];
    return unlift(Y);
  }

 private:
  int n_;
  double sphere_;
};

// ------------------------------------------------------------ RadialCustom
// A ray [0, inf) carrying lambda(r) dr scaled by |S| plus point masses.
class RadialCustom final : public SpaceModel {
 public:
  RadialCustom(double Q, double sphere, std::vector<double> radii, std::vector<double> table,
               std::vector<Atom> atoms)
      : Q_(Q), sphere_(sphere), radii_(std::move(radii)), table_(std::move(table)), atoms_(std::move(atoms)) {
    require(std::isfinite(sphere) && sphere >= 0.0, "radial sphere measure must be >= 0");
    for (const Atom& a : atoms_)
      require(a.radius >= 0.0 && a.mass > 0.0 && std::isfinite(a.radius) && std::isfinite(a.mass),
              "atoms need radius >= 0 and positive mass");
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.radius < b.radius; });
    if (!radii_.empty()) {
      require(radii_.size() == table_.size() && radii_.size() >= 2, "lambda table needs >= 2 rows");
      for (std::size_t i = 0; i < radii_.size(); ++i) {
        require(table_[i] >= 0.0, "lambda table values must be nonnegative");
        if (i) require(radii_[i] > radii_[i - 1], "lambda table radii must increase");
      }
      require(radii_.front() >= 0.0, "lambda table radii must be nonnegative");
    } else {
      require(Q_ > 0.0, "radial power model needs Q > 0");
    }
  }
  SpaceKind kind() const override { return SpaceKind::RadialCustom; }
  std::string descriptor() const override {
    if (!radii_.empty()) return "radial:table;sphere=" + fmt_num(sphere_);
    return "radial:Q=" + fmt_num(Q_) + ";sphere=" + fmt_num(sphere_);
  }
  std::size_t dim() const override { return 1; }
  double homogeneous_dimension() const override { return Q_; }
  double sphere_measure() const override { return sphere_; }
  double polar_weight(double r) const override {
    if (sphere_ == 0.0) return 0.0;
    if (radii_.empty()) return std::pow(r, Q_ - 1.0);
    if (r < radii_.front() || r > radii_.back()) return 0.0;
    auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
    if (it == radii_.end()) return table_.back();
    const std::size_t j = it - radii_.begin();
    const double t = (r - radii_[j - 1]) / (radii_[j] - radii_[j - 1]);
    return table_[j - 1] + t * (table_[j] - table_[j - 1]);
  }
  BallVolumeModel ball_model() const override {
    if (radii_.empty() && atoms_.empty()) return {true, sphere_ / Q_, Q_};
    return {false, 0.0, 0.0};
  }
  double ball_volume(double r) const override {
    require(r >= 0.0, "ball radius must be nonnegative");
    double v = 0.0;
    if (sphere_ > 0.0) {
      if (radii_.empty()) {
        v = sphere_ * std::pow(r, Q_) / Q_;
      } else {
        Tolerance tol;
        tol.rel = 1e-12;
        v = sphere_ * integrate_interval([this](double t) { return polar_weight(t); }, 0.0, r, tol).value;
      }
    }
    for (const Atom& a : atoms_)
      if (a.radius < r) v += a.mass;
    return v;
  }
  double distance(const SpacePoint& x, const SpacePoint& y) const override { return std::abs(x[0] - y[0]); }
  double norm(const SpacePoint& x) const override { return std::abs(x[0]); }
  SpacePoint sample_direction(Rng&) const override { return SpacePoint{1.0}; }
  SpacePoint from_polar(double r, const SpacePoint&) const override { return SpacePoint{r}; }
  SpacePoint offset(const SpacePoint&, double, const SpacePoint&) const override {
    throw InvalidInput("radial models carry no pair geometry; double integrals are unsupported");
  }
  bool supports_pairs() const override { return false; }
  const std::vector<Atom>& atoms() const override { return atoms_; }
  const std::vector<double>& table_radii() const { return radii_; }

 private:
  double Q_;
  double sphere_;
  std::vector<double> radii_, table_;
  std::vector<Atom> atoms_;
};

std::map<std::string, std::string> parse_kv(const std::string& body, std::string& head) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(body);
  std::string item;
  bool first = true;
  while (std::getline(ss, item, ';')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (first) head = item;
      else throw InvalidInput("space descriptor item '" + item + "' is not key=value");
    } else {
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    first = false;
  }
  return kv;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("bad number '" + s + "' for " + what);
  }
}

int to_int(const std::string& s, const std::string& what) {
  double v = to_double(s, what);
  require(v == std::floor(v), what + " must be an integer");
  return static_cast<int>(v);
}

}  // namespace

const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::HomogeneousGroup: return "group";
    case SpaceKind::Heisenberg: return "heisenberg";
    case SpaceKind::Hyperbolic: return "hyperbolic";
    case SpaceKind::RadialCustom: return "radial";
  }
  return "?";
}

const char* to_string(GroupNorm n) {
  switch (n) {
    case GroupNorm::Max: return "max";
    case GroupNorm::Sum: return "sum";
    case GroupNorm::Euclidean: return "euclidean";
  }
  return "?";
}

double SpaceModel::ball_volume(double r) const {
  require(r >= 0.0, "ball radius must be nonnegative");
  if (r == 0.0) return 0.0;
  const BallVolumeModel m = ball_model();
  if (m.closed_form) return m.coefficient * std::pow(r, m.exponent);
  Tolerance tol;
  tol.rel = 1e-12;
  const IntegralResult res = integrate_interval([this](double t) { return polar_weight(t); }, 0.0, r, tol);
  double v = sphere_measure() * res.value;
  for (const Atom& a : atoms())
    if (a.radius < r) v += a.mass;
  return v;
}

const std::vector<Atom>& SpaceModel::atoms() const { return kNoAtoms; }

void SpaceModel::check_point(const SpacePoint& x) const {
  if (x.dim() != dim())
    throw InvalidInput("point has " + std::to_string(x.dim()) + " coordinates, space " + descriptor() +
                       " needs " + std::to_string(dim()));
  require(x.all_finite(), "point coordinates must be finite");
}

SpacePtr make_euclidean(int n) { return std::make_shared<Euclidean>(n); }
SpacePtr make_group(const std::vector<double>& weights, GroupNorm norm) {
  return std::make_shared<AbelianGroup>(weights, norm);
}
SpacePtr make_heisenberg(int n, double beta) { return std::make_shared<Heisenberg>(n, beta); }
SpacePtr make_hyperbolic(int n) { return std::make_shared<Hyperbolic>(n); }
SpacePtr make_radial_power(double Q, double sphere, std::vector<Atom> atoms) {
  return std::make_shared<RadialCustom>(Q, sphere, std::vector<double>{}, std::vector<double>{}, std::move(atoms));
}
SpacePtr make_radial_table(std::vector<double> radii, std::vector<double> lambda, double sphere,
                           std::vector<Atom> atoms) {
  return std::make_shared<RadialCustom>(0.0, sphere, std::move(radii), std::move(lambda), std::move(atoms));
}

SpacePtr parse_space(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  require(colon != std::string::npos, "space descriptor '" + descriptor + "' lacks ':'");
  const std::string kind = descriptor.substr(0, colon);
  std::string head;
  auto kv = parse_kv(descriptor.substr(colon + 1), head);
  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) return {};
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  SpacePtr out;
  if (kind == "euclidean") {
    out = make_euclidean(to_int(head, "euclidean dimension"));
  } else if (kind == "hyperbolic") {
    out = make_hyperbolic(to_int(head, "hyperbolic dimension"));
  } else if (kind == "heisenberg") {
    std::string b = take("beta");
    out = make_heisenberg(to_int(head, "heisenberg n"), b.empty() ? 1.0 : to_double(b, "beta"));
  } else if (kind == "group") {
    std::string q = take("Q");
    std::string w = take("weights");
    std::string nm = take("norm");
    require(head.empty(), "group descriptor takes Q= or weights=");
    std::vector<double> nu;
    if (!q.empty()) {
      require(w.empty(), "group descriptor takes Q= or weights=, not both");
      nu.assign(to_int(q, "group Q"), 1.0);
    } else {
      require(!w.empty(), "group descriptor needs Q= or weights=");
      std::stringstream ws(w);
      std::string tok;
      while (std::getline(ws, tok, ',')) nu.push_back(to_double(tok, "dilation weight"));
    }
    GroupNorm gn = q.empty() ? GroupNorm::Max : GroupNorm::Euclidean;
    if (nm == "max") gn = GroupNorm::Max;
    else if (nm == "sum") gn = GroupNorm::Sum;
    else if (nm == "euclidean") gn = GroupNorm::Euclidean;
    else if (!nm.empty()) throw InvalidInput("unknown group norm '" + nm + "'");
    out = make_group(nu, gn);
  } else if (kind == "radial") {
    std::string q = take("Q");
    std::string sp = take("sphere");
    require(!q.empty(), "radial descriptor needs Q=");
    out = make_radial_power(to_double(q, "radial Q"), sp.empty() ? 1.0 : to_double(sp, "sphere"));
  } else {
    throw InvalidInput("unknown space kind '" + kind + "'");
  }
  if (!kv.empty()) throw InvalidInput("unknown space option '" + kv.begin()->first + "' in " + descriptor);
  return out;
}

double distance(const SpaceModel& s, const SpacePoint& x, const SpacePoint& y) {
  s.check_point(x);
  s.check_point(y);
  return s.distance(x, y);
}

double ball_volume(const SpaceModel& s, double r) { return s.ball_volume(r); }

double polar_weight(const SpaceModel& s, double r) {
  require(r > 0.0, "polar weight needs r > 0");
  return s.polar_weight(r);
}

SpacePoint heisenberg_compose(const SpacePoint& a, const SpacePoint& b, int n) {
  const std::size_t d = 2 * static_cast<std::size_t>(n) + 1;
  require(a.dim() == d && b.dim() == d, "heisenberg points need 2n+1 coordinates");
  SpacePoint c(d);
  double symp = 0.0;
  for (int i = 0; i < n; ++i) {
    c[i] = a[i] + b[i];
    c[n + i] = a[n + i] + b[n + i];
    symp += a[i] * b[n + i] - b[i] * a[n + i];
  }
  c[2 * n] = a[2 * n] + b[2 * n] + 0.5 * symp;
  return c;
}

SpacePoint heisenberg_inverse(const SpacePoint& a) {
  SpacePoint c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = -a[i];
  return c;
}

double koranyi_norm(const SpacePoint& xi, int n) {
  double z2 = 0.0;
  for (int i = 0; i < 2 * n; ++i) z2 += xi[i] * xi[i];
  const double t = xi[2 * n];
  return std::sqrt(std::sqrt(z2 * z2 + t * t));
}

double heisenberg_unit_ball_volume(int n) {
  // |B| = int_{|z|<1} 2 sqrt(1-|z|^4) dz = |S^{2n-1}| * B(n/2, 3/2) / 2.
  const double sph = unit_sphere_area(2 * n);
  const double beta_fn = std::exp(std::lgamma(0.5 * n) + std::lgamma(1.5) - std::lgamma(0.5 * n + 1.5));
  return 0.5 * sph * beta_fn;
}

double standard_normal(Rng& rng) {
  const double u1 = uniform_open0(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

BetaEstimate estimate_beta(const SpaceModel& s, long samples, std::uint64_t seed, int refine_starts,
                           int refine_steps) {
  require(s.kind() == SpaceKind::Heisenberg, "estimate_beta needs a Heisenberg space");
  const int n = static_cast<int>((s.dim() - 1) / 2);
  auto ratio = [&](const SpacePoint& a, const SpacePoint& b) {
    const double da = koranyi_norm(a, n);
    if (da == 0.0) return -1.0;
    return (koranyi_norm(heisenberg_compose(a, b, n), n) - koranyi_norm(b, n)) / da;
  };
  Rng rng(stream_seed(seed, 0xbe7a, 0));
  struct Cand {
    double r;
    SpacePoint a, b;
  };
  std::vector<Cand> best;
  BetaEstimate out;
  auto consider = [&](const SpacePoint& a, const SpacePoint& b) {
    const double r = ratio(a, b);
    ++out.pairs;
    if (r < 0.0) return;
    if (static_cast<int>(best.size()) < refine_starts) {
      best.push_back({r, a, b});
      std::push_heap(best.begin(), best.end(), [](const Cand& x, const Cand& y) { return x.r > y.r; });
    } else if (r > best.front().r) {
      std::pop_heap(best.begin(), best.end(), [](const Cand& x, const Cand& y) { return x.r > y.r; });
      best.back() = {r, a, b};
      std::push_heap(best.begin(), best.end(), [](const Cand& x, const Cand& y) { return x.r > y.r; });
    }
  };
  // xi' = 0 gives ratio exactly 1.
  consider(s.from_polar(1.0, s.sample_direction(rng)), SpacePoint(s.dim()));
  for (long i = 0; i < samples; ++i) {
    const double ra = std::exp(8.0 * uniform01(rng) - 4.0);
    const double rb = std::exp(8.0 * uniform01(rng) - 4.0);
    consider(s.from_polar(ra, s.sample_direction(rng)), s.from_polar(rb, s.sample_direction(rng)));
  }
  double raw = 0.0;
  for (const Cand& c : best) raw = std::max(raw, c.r);
  // Local hill climb from the best sampled pairs.
  for (const Cand& c0 : best) {
    Cand c = c0;
    double step = 0.1;
    for (int it = 0; it < refine_steps && step > 1e-9; ++it) {
      SpacePoint a = c.a, b = c.b;
      const double sa = step * koranyi_norm(c.a, n), sb = step * (koranyi_norm(c.b, n) + 1e-12);
      for (std::size_t k = 0; k < a.dim(); ++k) {
        a[k] += sa * standard_normal(rng);
        b[k] += sb * standard_normal(rng);
      }
      const double r = ratio(a, b);
      ++out.pairs;
      if (r > c.r) {
        c = {r, a, b};
        step *= 1.5;
      } else {
        step *= 0.7;
      }
    }
    raw = std::max(raw, c.r);
  }
  out.raw_max = raw;
  out.beta = std::max(1.0, raw);
  out.note = "sampled lower estimate of sup (d(xi o xi') - d(xi')) / d(xi); clamped below at 1";
  return out;
}

IntegralResult estimate_unit_ball_volume(const SpaceModel& s, long samples, std::uint64_t seed) {
  require(s.kind() != SpaceKind::RadialCustom, "unit ball sampling needs coordinates");
  require(samples > 0, "samples must be positive");
  const std::size_t d = s.dim();
  Rng rng(stream_seed(seed, 0xba11, 0));
  // Every implemented unit ball sits in [-1,1]^d (chart coordinates for the
  // hyperbolic model, weighted by its chart Jacobian (sinh r / r)^{n-1}).
  const double box = std::pow(2.0, static_cast<double>(d));
  double sum = 0.0, sum2 = 0.0;
  for (long i = 0; i < samples; ++i) {
    SpacePoint p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = 2.0 * uniform01(rng) - 1.0;
    double w = 0.0;
    const double r = s.norm(p);
    if (r < 1.0) {
      w = 1.0;
      if (s.kind() == SpaceKind::Hyperbolic && r > 0.0) w = std::pow(std::sinh(r) / r, double(d) - 1.0);
    }
    sum += w;
    sum2 += w * w;
  }
  const double m = sum / samples;
  const double var = std::max(0.0, sum2 / samples - m * m);
  IntegralResult res;
  res.value = box * m;
  res.error_estimate = box * std::sqrt(var / samples);
  res.samples_used = samples;
  return res;
}

}  // namespace hardy
