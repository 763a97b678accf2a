#include "hardy/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "hardy/error.hpp"

namespace hardy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBatches = 64;
// Below kFreeze * l the difference |u(x) - u(y)| is dominated by rounding;
// the difference quotient is frozen at that radius instead.
constexpr double kFreeze = 1e-6;

struct Moments {
  double sum = 0.0;
  double sum2 = 0.0;
  long n = 0;
  void add(double v) {
    sum += v;
    sum2 += v * v;
    ++n;
  }
};

IntegralResult from_moments(const std::vector<Moments>& batches) {
  Moments all;
  for (const Moments& m : batches) {
    all.sum += m.sum;
    all.sum2 += m.sum2;
    all.n += m.n;
  }
  IntegralResult r;
  if (all.n == 0) return r;
  const double mean = all.sum / all.n;
  const double var = std::max(0.0, all.sum2 / all.n - mean * mean);
  r.value = mean;
  r.error_estimate = std::sqrt(var / all.n);
  r.samples_used = all.n;
  if (!std::isfinite(r.value) || !std::isfinite(r.error_estimate))
    throw DivergenceError("non-finite Monte Carlo estimate");
  return r;
}

// Location density for points: a profile-matched part mixed with a heavy
// floor so that every region of X keeps positive density.
class PointDensity {
 public:
  PointDensity(const SpaceModel& s, const std::function<double(double)>& profile, double core)
      : s_(s), S_(s.sphere_measure()) {
    const double Q = s.homogeneous_dimension();
    const double c = std::max(core, 1e-6);
    floor_.emplace([Q, c](double r) { return std::pow(r, Q - 1.0) * std::pow(1.0 + r / c, -Q - 1.0); },
                   1e-7 * c, 1e4 * c);
    if (profile) {
      auto phi = [&s, profile](double r) {
        const double l = s.polar_weight(r);
        return l == 0.0 ? 0.0 : l * profile(r);
      };
      // A zero profile has no mass; keep only the floor then.
      double probe = 0.0;
      for (int i = 0; i <= 400; ++i) probe = std::max(probe, phi(c * 1e-3 * std::pow(1e6, i / 400.0)));
      if (probe > 0.0 && std::isfinite(probe)) {
        // A profile of infinite mass (u constant far out) cannot steer
        // sampling; the floor alone is still a valid density.
        try {
          main_.emplace(phi, 1e-7 * c, 1e3 * c);
          mix_ = 0.8;
        } catch (const DivergenceError&) {
          main_.reset();
        }
      }
    }
  }
  SpacePoint sample(Rng& rng) const {
    const bool use_main = main_ && uniform01(rng) < mix_;
    const double r = use_main ? main_->sample(rng) : floor_->sample(rng);
    return s_.from_polar(r, s_.sample_direction(rng));
  }
  double pdf(const SpacePoint& x) const {
    const double r = s_.norm(x);
    double f = (1.0 - mix_) * floor_->pdf(r);
    if (main_) f += mix_ * main_->pdf(r);
    const double l = s_.polar_weight(r);
    return f / (S_ * l);
  }

 private:
  const SpaceModel& s_;
  double S_;
  double mix_ = 0.0;
  std::optional<RadialSampler> main_, floor_;
};

RadialSampler offset_sampler(const PairIntegrand& f, const SpaceModel& s, double ell) {
  const double p = f.diff_power;
  auto kernel = f.kernel;
  auto phi = [&s, kernel, ell, p](double rho) {
    const double l = s.polar_weight(rho);
    if (l == 0.0) return 0.0;
    const double k = kernel(rho);
    const double sat = rho < ell ? std::pow(rho / ell, p) : 1.0;
    return l * k * sat;
  };
  return RadialSampler(phi, 1e-7 * ell, 1e5 * std::max(ell, f.core_radius));
}

double length_scale(const PairIntegrand& f, const QuadratureConfig& cfg) {
  const double ell = cfg.diagonal_split > 0.0 ? cfg.diagonal_split : f.length_scale;
  require(ell > 0.0 && std::isfinite(ell), "pair integrand needs a positive length scale");
  return ell;
}

// F(x(rho), y, rho) ~ F(x(rho0), y, rho0) (rho / rho0)^{p - kappa} below rho0,
// with kappa the local decay exponent of the kernel.
double freeze_exponent(const PairIntegrand& f, double rho0) {
  const double kappa = std::log2(f.kernel(0.5 * rho0) / f.kernel(rho0));
  if (!std::isfinite(kappa)) throw DivergenceError("kernel is not finite near the diagonal");
  return f.diff_power - kappa;
}

void check_pairs(const PairIntegrand& f, const SpaceModel& s) {
  require(s.supports_pairs(), "space " + s.descriptor() + " has no pair geometry");
  require(static_cast<bool>(f.F) && static_cast<bool>(f.kernel), "pair integrand incomplete");
  require(f.diff_power > 0.0, "pair integrand needs a positive difference power");
}

}  // namespace

void QuadratureConfig::validate() const {
  require(truncation_radius >= 0.0 && std::isfinite(truncation_radius), "truncation radius must be >= 0");
  require(diagonal_split >= 0.0 && std::isfinite(diagonal_split), "diagonal split must be >= 0");
  if (truncation_radius > 0.0 && diagonal_split > 0.0)
    require(truncation_radius > diagonal_split, "truncation radius must exceed the diagonal split");
  require(radial_nodes >= 1 && sphere_nodes >= 1 && mc_samples >= 1, "node and sample counts must be >= 1");
  require(rel_tolerance > 0.0 && rel_tolerance < 1.0, "rel_tolerance must lie in (0, 1)");
  require(threads >= 0, "threads must be >= 0");
}

Tolerance QuadratureConfig::tolerance() const {
  Tolerance t;
  t.rel = rel_tolerance;
  t.max_subdivisions = radial_nodes;
  return t;
}

int worker_count(const QuadratureConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("HARDY_VERIFY_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

IntegralResult radial_integral(const ScalarFn& g, const SpaceModel& s, const QuadratureConfig& cfg,
                               const RadialHints& hints) {
  cfg.validate();
  const Tolerance tol = cfg.tolerance();
  const double S = s.sphere_measure();
  const double R = cfg.truncation_radius;
  const double upper = std::min(R > 0.0 ? R : kInf, hints.support);
  IntegralResult res;
  if (S > 0.0 && upper > 0.0) {
    auto f = [&](double r) {
      const double l = s.polar_weight(r);
      return l == 0.0 ? 0.0 : l * g(r);
    };
    if (std::isfinite(upper)) {
      res = integrate_from_zero(f, upper, tol);
    } else {
      res = integrate_half_line(f, std::max(hints.scale, 1e-12), tol);
    }
    if (R > 0.0 && R < hints.support) {
      double bound = kInf;
      if (hints.tail_envelope) {
        try {
          auto tail = [&](double r) { return s.polar_weight(r) * std::abs(hints.tail_envelope(r)); };
          bound = integrate_to_infinity(tail, R, tol).value;
        } catch (const DivergenceError&) {
          bound = kInf;
        }
      }
      res.truncation_bound += bound;
    }
    res = res.scaled(S);
  }
  for (const Atom& a : s.atoms()) {
    if (a.radius >= upper) continue;
    const double v = g(a.radius);
    if (!std::isfinite(v)) throw DivergenceError("integrand is infinite on an atom at r=" + std::to_string(a.radius));
    res.value += a.mass * v;
    ++res.samples_used;
  }
  return res;
}

SphereRule sphere_rule(const SpaceModel& s, int nodes, std::uint64_t seed) {
  SphereRule rule;
  const double S = s.sphere_measure();
  if (s.kind() == SpaceKind::RadialCustom) {
    rule.dirs = {SpacePoint{1.0}};
    rule.weights = {S};
    rule.exact = true;
    return rule;
  }
  if (s.dim() == 1) {
    rule.dirs = {SpacePoint{1.0}, SpacePoint{-1.0}};
    rule.weights = {0.5 * S, 0.5 * S};
    rule.exact = true;
    return rule;
  }
  require(nodes >= 1, "sphere rule needs >= 1 node");
  Rng rng(stream_seed(seed, 0x5f3e, 0));
  for (int i = 0; i < nodes; ++i) {
    rule.dirs.push_back(s.sample_direction(rng));
    rule.weights.push_back(S / nodes);
  }
  return rule;
}

RadialSampler::RadialSampler(const ScalarFn& phi, double lo, double hi, int bins_per_decade) : lo_(lo), hi_(hi) {
  require(lo > 0.0 && hi > lo, "radial sampler needs 0 < lo < hi");
  const int nb = std::max(1, static_cast<int>(std::ceil(std::log10(hi / lo) * bins_per_decade)));
  edges_.resize(nb + 1);
  for (int j = 0; j <= nb; ++j) edges_[j] = lo * std::pow(hi / lo, double(j) / nb);
  edges_.back() = hi;
  Tolerance tol;
  tol.rel = 1e-6;
  tol.max_subdivisions = 60;
  mass_.resize(nb);
  for (int j = 0; j < nb; ++j) {
    const double m = integrate_interval(phi, edges_[j], edges_[j + 1], tol).value;
    if (!std::isfinite(m)) throw DivergenceError("kernel profile is not finite on the sampling table");
    mass_[j] = std::max(0.0, m);
  }
  const double f_lo = phi(lo), f_lo2 = phi(2.0 * lo);
  if (!std::isfinite(f_lo) || !std::isfinite(f_lo2)) throw DivergenceError("kernel profile is infinite near 0");
  if (f_lo > 0.0 && f_lo2 > 0.0) {
    gamma_ = std::log2(2.0 * f_lo2 / f_lo);
    if (!(gamma_ > 1e-3))
      throw DivergenceError("profile mass diverges at 0 (local exponent " + std::to_string(gamma_) + ")");
    mass_lo_ = f_lo * lo / gamma_;
  }
  const double f_hi = phi(hi), f_hh = phi(0.5 * hi);
  if (!std::isfinite(f_hi) || !std::isfinite(f_hh)) throw DivergenceError("kernel profile is infinite at large radii");
  if (f_hi > 0.0 && f_hh > 0.0) {
    alpha_ = std::log2(0.5 * f_hh / f_hi);
    if (!(alpha_ > 1e-3))
      throw DivergenceError("profile mass diverges at infinity (tail exponent " + std::to_string(-alpha_) + ")");
    mass_hi_ = f_hi * hi / alpha_;
  }
  cdf_.reserve(nb + 2);
  double acc = mass_lo_;
  cdf_.push_back(acc);
  for (double m : mass_) cdf_.push_back(acc += m);
  cdf_.push_back(acc += mass_hi_);
  total_ = acc;
  require(total_ > 0.0 && std::isfinite(total_), "radial sampler profile has no mass");
}

double RadialSampler::sample(Rng& rng) const {
  const double u = uniform01(rng) * total_;
  const std::size_t seg = std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin();
  if (seg == 0) return lo_ * std::pow(uniform_open0(rng), 1.0 / gamma_);
  if (seg >= cdf_.size() - 1) {
    if (mass_hi_ > 0.0) return hi_ * std::pow(uniform_open0(rng), -1.0 / alpha_);
    // Rounding at the top of the table: fall back to the last massive bin.
    std::size_t j = mass_.size();
    while (j > 0 && mass_[j - 1] == 0.0) --j;
    return edges_[j - 1] * std::pow(edges_[j] / edges_[j - 1], uniform01(rng));
  }
  const std::size_t j = seg - 1;
  return edges_[j] * std::pow(edges_[j + 1] / edges_[j], uniform01(rng));
}

double RadialSampler::pdf(double r) const {
  if (r <= 0.0) return 0.0;
  if (r < lo_) return mass_lo_ / total_ * gamma_ * std::pow(r / lo_, gamma_) / r;
  if (r >= hi_) return mass_hi_ / total_ * alpha_ * std::pow(hi_ / r, alpha_) / r;
  std::size_t j = std::upper_bound(edges_.begin(), edges_.end(), r) - edges_.begin();
  j = std::min(j, mass_.size()) - 1;
  return mass_[j] / total_ / (r * std::log(edges_[j + 1] / edges_[j]));
}

IntegralResult double_singular_integral(const PairIntegrand& f, const SpaceModel& s, const QuadratureConfig& cfg) {
  cfg.validate();
  check_pairs(f, s);
  const double ell = length_scale(f, cfg);
  const RadialSampler w = offset_sampler(f, s, ell);
  const PointDensity points(s, f.location_profile, f.core_radius);
  const double S = s.sphere_measure();
  const double rho0 = kFreeze * ell;
  const double freeze = freeze_exponent(f, rho0);

  const long n = cfg.mc_samples;
  const int nb = static_cast<int>(std::min<long>(kBatches, n));
  std::vector<Moments> batches(nb);
  parallel_for(nb, worker_count(cfg), [&](int b) {
    Rng rng(stream_seed(cfg.seed, 0xd5, b));
    const long count = n / nb + (b < n % nb ? 1 : 0);
    Moments m;
    for (long i = 0; i < count; ++i) {
      const SpacePoint P = points.sample(rng);
      const double rho = w.sample(rng);
      const SpacePoint dir = s.sample_direction(rng);
      const SpacePoint Qp = s.offset(P, rho, dir);
      double num;
      if (rho < rho0) {
        const SpacePoint Q0 = s.offset(P, rho0, dir);
        num = (f.F(P, Q0, rho0) + f.F(Q0, P, rho0)) * std::pow(rho / rho0, freeze);
      } else {
        num = f.F(P, Qp, rho) + f.F(Qp, P, rho);
      }
      double v = 0.0;
      if (num != 0.0) {
        const double pw = w.pdf(rho) / (S * s.polar_weight(rho));
        v = num / ((points.pdf(P) + points.pdf(Qp)) * pw);
      }
      m.add(v);
    }
    batches[b] = m;
  });
  return from_moments(batches);
}

IntegralResult mixed_norm_integral(const MixedIntegrand& f, const SpaceModel& s, const QuadratureConfig& cfg) {
  cfg.validate();
  check_pairs(f.inner, s);
  require(f.exponent > 0.0, "mixed norm exponent must be positive");
  require(static_cast<bool>(f.outer_weight), "mixed norm needs an outer weight");
  const double ell = length_scale(f.inner, cfg);
  const double r = f.exponent;
  const double S = s.sphere_measure();

  if (s.dim() == 1) {
    // Nested adaptive quadrature on the line.
    Tolerance tol = cfg.tolerance();
    Tolerance inner_tol = tol;
    inner_tol.rel = 0.1 * tol.rel;
    const SpacePoint dirs[2] = {SpacePoint{1.0}, SpacePoint{-1.0}};
    const double rho0 = kFreeze * ell;
    const double freeze = freeze_exponent(f.inner, rho0);
    const double core = std::max(f.inner.core_radius, ell);
    std::vector<std::pair<double, double>> inner_log;  // (value, error) per outer node
    long evals = 0;
    auto inner = [&](const SpacePoint& y) {
      double value = 0.0, err = 0.0;
      for (const SpacePoint& d : dirs) {
        double frozen = 0.0;
        bool have_frozen = false;
        auto g = [&](double rho) {
          if (rho < rho0) {
            if (!have_frozen) {
              frozen = f.inner.F(s.offset(y, rho0, d), y, rho0);
              have_frozen = true;
            }
            return s.polar_weight(rho) * frozen * std::pow(rho / rho0, freeze);
          }
          const SpacePoint x = s.offset(y, rho, d);
          return s.polar_weight(rho) * f.inner.F(x, y, rho);
        };
        // Far from the pole u lives in a window of width 2 * core around
        // rho = |y|; a dyadic panel can be wide enough to step over it.
        const double ry = s.norm(y);
        std::vector<double> cuts{ell};
        for (double c : {ry - core, ry + core})
          if (c > ell) cuts.push_back(c);
        IntegralResult part = integrate_from_zero(g, ell, inner_tol);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) part += integrate_interval(g, cuts[i], cuts[i + 1], inner_tol);
        part += integrate_to_infinity(g, cuts.back(), inner_tol);
        value += 0.5 * S * part.value;
        err += 0.5 * S * part.error_estimate;
        evals += part.samples_used;
      }
      inner_log.emplace_back(value, err);
      return value;
    };
    IntegralResult out;
    for (const SpacePoint& d : dirs) {
      auto g = [&](double rad) {
        const SpacePoint y = s.from_polar(rad, d);
        const double v = f.outer_weight(y);
        if (v == 0.0) return 0.0;
        const double I = inner(y);
        return s.polar_weight(rad) * v * std::pow(std::max(I, 0.0), r);
      };
      const IntegralResult part = integrate_half_line(g, std::max(f.inner.core_radius, 1e-12), tol);
      out.value += 0.5 * S * part.value;
      out.error_estimate += 0.5 * S * part.error_estimate;
      out.truncation_bound += 0.5 * S * part.truncation_bound;
    }
    // Relative inner error, ignoring nodes far below the peak (their
    // absolute errors are negligible in the outer integral).
    double peak = 0.0, worst_inner_rel = 0.0;
    for (const auto& [v, e] : inner_log) peak = std::max(peak, v);
    for (const auto& [v, e] : inner_log)
      if (v >= 1e-6 * peak && v > 0.0) worst_inner_rel = std::max(worst_inner_rel, e / v);
    out.error_estimate += r * worst_inner_rel * std::abs(out.value);
    out.samples_used = evals;
    return out;
  }

  // Outer Monte Carlo over y, inner Monte Carlo over x = y.w.
  constexpr int kInner = 32;
  const RadialSampler w = offset_sampler(f.inner, s, ell);
  std::function<double(double)> outer_profile;
  if (f.inner.location_profile) {
    auto lp = f.inner.location_profile;
    outer_profile = [lp, r](double t) { return std::pow(std::max(lp(t), 0.0), r); };
  }
  const PointDensity points(s, outer_profile, f.inner.core_radius);
  const double rho0 = kFreeze * ell;
  const double freeze = freeze_exponent(f.inner, rho0);
  const long n_outer = std::max<long>(1, cfg.mc_samples / kInner);
  const int nb = static_cast<int>(std::min<long>(kBatches, n_outer));
  std::vector<Moments> batches(nb);
  parallel_for(nb, worker_count(cfg), [&](int b) {
    Rng rng(stream_seed(cfg.seed, 0x3e, b));
    const long count = n_outer / nb + (b < n_outer % nb ? 1 : 0);
    Moments m;
    for (long i = 0; i < count; ++i) {
      const SpacePoint y = points.sample(rng);
      const double v = f.outer_weight(y);
      double sum = 0.0, sum2 = 0.0;
      for (int j = 0; j < kInner; ++j) {
        const double rho = w.sample(rng);
        const SpacePoint dir = s.sample_direction(rng);
        double Fv;
        if (rho < rho0) {
          Fv = f.inner.F(s.offset(y, rho0, dir), y, rho0) * std::pow(rho / rho0, freeze);
        } else {
          Fv = f.inner.F(s.offset(y, rho, dir), y, rho);
        }
        double t = 0.0;
        if (Fv != 0.0) t = Fv * S * s.polar_weight(rho) / w.pdf(rho);
        sum += t;
        sum2 += t * t;
      }
      const double I = sum / kInner;
      const double var_mean = std::max(0.0, sum2 / kInner - I * I) / (kInner - 1);
      double val = 0.0;
      if (I > 0.0 && v != 0.0) {
        val = std::pow(I, r);
        // Second-order correction of E[I_hat^r] when the inner estimate is tight.
        if (var_mean < 0.25 * I * I) val -= 0.5 * r * (r - 1.0) * std::pow(I, r - 2.0) * var_mean;
        val *= v / points.pdf(y);
      }
      m.add(val);
    }
    batches[b] = m;
  });
  IntegralResult res = from_moments(batches);
  res.samples_used *= kInner;
  return res;
}

}  // namespace hardy
