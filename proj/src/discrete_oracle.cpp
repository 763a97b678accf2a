#include "hardy/discrete_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "hardy/error.hpp"

namespace hardy {
namespace {

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

// Sum of m_y |f_y| over the strict ball of each x.
std::vector<double> ball_sums(const DiscreteSpace& s, const std::vector<double>& f) {
  const std::size_t n = s.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (s.radius(y) < s.radius(x)) out[x] += s.mass[y] * std::abs(f[y]);
  return out;
}

double ratio(const DiscreteSpace& s, const std::vector<double>& f, const std::vector<double>& g,
             const std::vector<double>& h, double p, double q) {
  const HardySums r = integral_hardy_sums(s, f, g, h, p, q);
  return r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
}

}  // namespace

void DiscreteSpace::validate() const {
  const std::size_t n = mass.size();
  require(n >= 1, "discrete space needs at least one point");
  require(dist.size() == n, "distance matrix has the wrong number of rows");
  require(base < n, "base point out of range");
  for (std::size_t i = 0; i < n; ++i) {
    require(mass[i] > 0.0 && std::isfinite(mass[i]), "masses must be positive and finite");
    require(dist[i].size() == n, "distance row " + std::to_string(i) + " has the wrong length");
    require(dist[i][i] == 0.0, "distance matrix needs a zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      require(dist[i][j] >= 0.0 && std::isfinite(dist[i][j]), "distances must be finite and nonnegative");
      require(dist[i][j] == dist[j][i], "distance matrix must be symmetric");
    }
  }
}

DiscreteSpace DiscreteSpace::scaled_masses(double c) const {
  DiscreteSpace out = *this;
  for (double& m : out.mass) m *= c;
  return out;
}

DiscreteSpace read_discrete_space(std::istream& in) {
  long n = 0;
  require(static_cast<bool>(in >> n) && n >= 1, "matrix file: expected a positive point count N");
  DiscreteSpace s;
  s.mass.resize(n);
  for (long i = 0; i < n; ++i)
    require(static_cast<bool>(in >> s.mass[i]), "matrix file: expected mass " + std::to_string(i + 1) + " of " +
                                                    std::to_string(n));
  s.dist.assign(n, std::vector<double>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      require(static_cast<bool>(in >> s.dist[i][j]),
              "matrix file: expected distance row " + std::to_string(i + 1) + " column " + std::to_string(j + 1));
  std::string extra;
  require(!(in >> extra), "matrix file: trailing content '" + extra + "'");
  s.validate();
  return s;
}

DiscreteSpace load_discrete_space(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open matrix file '" + path + "'");
  return read_discrete_space(in);
}

void write_discrete_space(std::ostream& out, const DiscreteSpace& s) {
  out.precision(17);
  out << s.size() << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s.mass[i];
  out << '\n';
  for (const auto& row : s.dist) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
}

DiscreteSpace random_discrete_space(Rng& rng, int n_min, int n_max) {
  require(n_min >= 2 && n_max >= n_min, "need 2 <= n_min <= n_max");
  const int n = n_min + static_cast<int>(uniform01(rng) * (n_max - n_min + 1));
  DiscreteSpace s;
  s.mass.resize(n);
  s.dist.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) s.mass[i] = uniform(rng, 0.1, 2.0);
  for (int i = 1; i < n; ++i) {
    const double r = (i > 1 && uniform01(rng) < 0.2) ? s.dist[0][i - 1] : uniform(rng, 0.1, 3.0);
    s.dist[0][i] = s.dist[i][0] = r;
  }
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.dist[i][j] = s.dist[j][i] = uniform(rng, 0.1, 6.0);
  return s;
}

AdmissibilityReport brute_force_D1(const DiscreteSpace& s, const std::vector<double>& g,
                                   const std::vector<double>& h, double p, double q) {
  s.validate();
  require(p > 1.0 && q >= p && std::isfinite(q), "D1 needs 1 < p <= q < inf");
  require(g.size() == s.size() && h.size() == s.size(), "g and h need one value per point");
  const double pp = conjugate(p);
  AdmissibilityReport rep;
  rep.method = "exact_discrete";
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (x == s.base) continue;
    const double r = s.radius(x);
    double out = 0.0, in = 0.0;
    for (std::size_t y = 0; y < s.size(); ++y) {
      if (s.radius(y) >= r) out += s.mass[y] * g[y];
      else in += s.mass[y] * std::pow(h[y], 1.0 - pp);
    }
    const double d = std::pow(out, 1.0 / q) * std::pow(in, 1.0 / pp);
    if (d > rep.D1) {
      rep.D1 = d;
      rep.argmax_radius = r;
    }
  }
  rep.smallness = std::pow(pp, 1.0 / pp) * std::pow(p, 1.0 / q) * rep.D1;
  rep.admissible = rep.smallness < 1.0;
  return rep;
}

double hardy_upper_constant(double D1, double p, double q) {
  const double pp = conjugate(p);
  return std::pow(pp, 1.0 / pp) * std::pow(p, 1.0 / q) * D1;
}

HardySums integral_hardy_sums(const DiscreteSpace& s, const std::vector<double>& f, const std::vector<double>& g,
                              const std::vector<double>& h, double p, double q) {
  require(f.size() == s.size(), "f needs one value per point");
  const std::vector<double> inner = ball_sums(s, f);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t x = 0; x < s.size(); ++x) {
    lhs += s.mass[x] * g[x] * std::pow(inner[x], q);
    rhs += s.mass[x] * std::pow(std::abs(f[x]), p) * h[x];
  }
  return {std::pow(lhs, 1.0 / q), std::pow(rhs, 1.0 / p)};
}

BestConstant best_constant_search(const DiscreteSpace& s, const std::vector<double>& g, const std::vector<double>& h,
                                  double p, double q, int trials, std::uint64_t seed) {
  const std::size_t n = s.size();
  const double pp = conjugate(p);
  BestConstant best;
  auto consider = [&](const std::vector<double>& f) {
    ++best.evaluations;
    const double r = ratio(s, f, g, h, p, q);
    if (r > best.value) {
      best.value = r;
      best.f = f;
    }
  };
  // Hölder equality case on each ball; closed balls are tried as well.
  for (std::size_t x = 0; x < n; ++x) {
    const double r = s.radius(x);
    std::vector<double> open(n, 0.0), closed(n, 0.0);
    for (std::size_t y = 0; y < n; ++y) {
      const double v = std::pow(h[y], 1.0 - pp);
      if (s.radius(y) < r) open[y] = v;
      if (s.radius(y) <= r) closed[y] = v;
    }
    consider(open);
    consider(closed);
  }
  Rng rng(mix_seed(seed));
  for (int t = 0; t < trials; ++t) {
    std::vector<double> f(n);
    for (double& v : f) v = uniform01(rng) < 0.3 ? 0.0 : uniform01(rng);
    consider(f);
  }
  if (best.f.empty()) best.f.assign(n, 1.0);

  std::vector<double> f = best.f;
  double current = best.value;
  double mean = 0.0;
  for (double v : f) mean += v;
  mean = mean > 0.0 ? mean / n : 1.0;
  std::vector<double> eta(n, 0.5);
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (eta[i] < 1e-12) continue;
      const double old = f[i];
      bool accepted = false;
      const double tries[2] = {old > 0.0 ? old * (1.0 + eta[i]) : eta[i] * mean, old / (1.0 + eta[i])};
      for (double candidate : tries) {
        f[i] = candidate;
        ++best.evaluations;
        const double r = ratio(s, f, g, h, p, q);
        if (r > current) {
          current = r;
          accepted = true;
          break;
        }
      }
      if (accepted) {
        moved = true;
      } else {
        f[i] = old;
        eta[i] *= 0.5;
      }
    }
    if (!moved && *std::max_element(eta.begin(), eta.end()) < 1e-12) break;
  }
  if (current > best.value) {
    best.value = current;
    best.f = f;
  }
  return best;
}

LogHolderSums log_holder_discrete(const std::vector<double>& mass, const std::vector<double>& u, double p, double q) {
  require(mass.size() == u.size(), "u needs one value per point");
  require(p > 1.0 && q > p && std::isfinite(q), "logarithmic Hölder needs 1 < p < q < inf");
  double Np = 0.0, Nq = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    Np += mass[i] * std::pow(std::abs(u[i]), p);
    Nq += mass[i] * std::pow(std::abs(u[i]), q);
  }
  require(Np > 0.0, "u vanishes identically");
  LogHolderSums out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = std::pow(std::abs(u[i]), p) / Np;
    if (d > 0.0) out.lhs += mass[i] * d * std::log(d);
  }
  out.rhs = q / (q - p) * std::log(std::pow(Nq, p / q) / Np);
  return out;
}

OracleCase random_oracle_case(Rng& rng) {
  OracleCase c;
  c.space = random_discrete_space(rng, 3, 12);
  const std::size_t n = c.space.size();
  c.g.resize(n);
  c.h.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.g[i] = uniform(rng, 0.1, 3.0);
    c.h[i] = uniform(rng, 0.1, 3.0);
  }
  c.p = uniform(rng, 1.1, 4.0);
  c.q = uniform(rng, c.p, 4.0);
  return c;
}

OracleSuiteResult run_oracle_suite(int spaces, int f_per_space, int search_trials, std::uint64_t seed) {
  require(spaces >= 1 && f_per_space >= 0 && search_trials >= 0, "oracle suite needs positive counts");
  OracleSuiteResult suite;
  constexpr double kSlack = 1e-12;
  for (int k = 0; k < spaces; ++k) {
    Rng rng(stream_seed(seed, 0x0a, k));
    const OracleCase c = random_oracle_case(rng);
    OracleSpaceResult r;
    r.index = k;
    r.points = c.space.size();
    r.p = c.p;
    r.q = c.q;
    r.D1 = brute_force_D1(c.space, c.g, c.h, c.p, c.q).D1;
    r.upper = hardy_upper_constant(r.D1, c.p, c.q);
    for (int t = 0; t < f_per_space; ++t) {
      std::vector<double> f(c.space.size());
      for (double& v : f) v = uniform01(rng) < 0.25 ? 0.0 : uniform(rng, -2.0, 2.0);
      const HardySums hs = integral_hardy_sums(c.space, f, c.g, c.h, c.p, c.q);
      ++r.f_checked;
      if (hs.rhs > 0.0) r.worst_ratio = std::max(r.worst_ratio, hs.lhs / (r.upper * hs.rhs));
      if (hs.lhs > r.upper * hs.rhs * (1.0 + kSlack)) ++r.violations;
    }
    r.best_found = best_constant_search(c.space, c.g, c.h, c.p, c.q, search_trials,
                                        stream_seed(seed, 0x0b, k)).value;
    r.search_within_bound = r.best_found <= r.upper * (1.0 + kSlack);
    r.pass = r.violations == 0 && r.search_within_bound;
    suite.total_f += r.f_checked;
    suite.violations += r.violations;
    if (!r.search_within_bound) ++suite.search_violations;
    if (r.best_found >= 0.9 * r.D1) ++suite.search_reaching_09;
    suite.pass = suite.pass && r.pass;
    suite.spaces.push_back(r);
  }
  return suite;
}

}  // namespace hardy
