#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hardy/rng.hpp"
#include "hardy/weights.hpp"

namespace hardy {

/// Finite metric-like measure space. Balls are strict: B(a, r) = {d(a, x) < r}.
/// The triangle inequality is not required.
struct DiscreteSpace {
  std::vector<double> mass;
  std::vector<std::vector<double>> dist;
  std::size_t base = 0;

  std::size_t size() const { return mass.size(); }
  double radius(std::size_t i) const { return dist[base][i]; }
  void validate() const;
  DiscreteSpace scaled_masses(double c) const;
};

/// Plain-text format: N, then N masses, then N rows of N distances, all
/// whitespace separated. The base point is index 0.
DiscreteSpace read_discrete_space(std::istream& in);
DiscreteSpace load_discrete_space(const std::string& path);
void write_discrete_space(std::ostream& out, const DiscreteSpace& s);

/// Random space with n_min..n_max points, masses in (0.1, 2) and pole radii
/// in (0.1, 3) with occasional ties.
DiscreteSpace random_discrete_space(Rng& rng, int n_min = 3, int n_max = 12);

/// Exact D1 as a max over the points x != a.
AdmissibilityReport brute_force_D1(const DiscreteSpace& s, const std::vector<double>& g,
                                   const std::vector<double>& h, double p, double q);

/// (p')^{1/p'} p^{1/q} D1.
double hardy_upper_constant(double D1, double p, double q);

struct HardySums {
  double lhs = 0.0;  // (sum_x m_x g_x (sum_{B(a,|x|_a)} m_y |f_y|)^q)^{1/q}
  double rhs = 0.0;  // (sum_x m_x |f_x|^p h_x)^{1/p}
};
HardySums integral_hardy_sums(const DiscreteSpace& s, const std::vector<double>& f, const std::vector<double>& g,
                              const std::vector<double>& h, double p, double q);

struct BestConstant {
  double value = 0.0;  // largest lhs / rhs found
  std::vector<double> f;
  long evaluations = 0;
};

/// Lower bound on the best Hardy constant: ball seeds h^{1-p'} 1_{B(a, r)},
/// `trials` random nonnegative f, then multiplicative coordinate ascent.
BestConstant best_constant_search(const DiscreteSpace& s, const std::vector<double>& g, const std::vector<double>& h,
                                  double p, double q, int trials, std::uint64_t seed);

struct LogHolderSums {
  double lhs = 0.0;
  double rhs = 0.0;
};
/// Entropy side and log-norm side of the logarithmic Hölder inequality with
/// exact sums. Throws InvalidInput when u vanishes identically.
LogHolderSums log_holder_discrete(const std::vector<double>& mass, const std::vector<double>& u, double p, double q);

/// One random space of the bracket suite.
struct OracleCase {
  DiscreteSpace space;
  std::vector<double> g, h;
  double p = 2.0, q = 2.0;
};
OracleCase random_oracle_case(Rng& rng);

struct OracleSpaceResult {
  int index = 0;
  std::size_t points = 0;
  double p = 0.0, q = 0.0;
  double D1 = 0.0;
  double upper = 0.0;       // (p')^{1/p'} p^{1/q} D1
  double best_found = 0.0;  // best_constant_search
  double worst_ratio = 0.0; // max over random f of lhs / (upper * rhs)
  int f_checked = 0;
  int violations = 0;
  bool search_within_bound = true;
  bool pass = true;
};

struct OracleSuiteResult {
  std::vector<OracleSpaceResult> spaces;
  int total_f = 0;
  int violations = 0;
  int search_violations = 0;
  int search_reaching_09 = 0;  // spaces with best_found >= 0.9 D1
  bool pass = true;
};

/// Bracket suite: `spaces` random spaces, `f_per_space` random f each.
OracleSuiteResult run_oracle_suite(int spaces, int f_per_space, int search_trials, std::uint64_t seed);

}  // namespace hardy
