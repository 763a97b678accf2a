// Acceptance checks AC1-AC9. Prints one PASS/FAIL line per criterion; with an
// argument ("AC5") runs that criterion only. Exit status is nonzero when any
// selected criterion fails.

#include <boost/rational.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles/tensor_grid.hpp"
#include "hardy/discrete_oracle.hpp"
#include "hardy/inequalities.hpp"

using namespace hardy;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures with a short reason; the first few are reported.
struct Check {
  int failures = 0;
  std::ostringstream why;
  void operator()(bool ok, const std::string& what) {
    if (ok) return;
    if (++failures <= 3) why << (failures > 1 ? "; " : "") << what;
  }
  Outcome done(const std::string& summary) const {
    if (failures == 0) return {true, summary};
    return {false, std::to_string(failures) + " failure(s): " + why.str()};
  }
};

std::string g(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// AC1: closed-form identity and exact smallness test on a (Q, s, p) grid.
Outcome ac1() {
  Check check;
  using R = boost::rational<long long>;
  int grid = 0;
  double worst = 0.0;
  for (int Q = 1; Q <= 6; ++Q) {
    for (int sk = 1; sk <= 19; ++sk) {
      const R s(sk, 20);
      // p = Q/s + j/8 (10 - Q/s) for j = 1..8, rounded to a rational in (Q/s, 10].
      const R qs = R(Q) / s;
      if (qs >= R(10)) continue;
      for (int j = 1; j <= 8; ++j) {
        const R p = qs + R(j, 8) * (R(10) - qs);
        const double Qd = Q, sd = boost::rational_cast<double>(s), pd = boost::rational_cast<double>(p);
        const AdmissibilityReport a = closed_form_D1_homogeneous(Qd, sd, pd);
        const double pc = pd / (pd - 1.0);
        const double lhs = std::pow(pc, 1.0 / pc) * std::pow(pd, 1.0 / pd) * Qd * std::pow(pd - 1.0, 1.0 / pc) /
                           (sd * pd + Qd * pd - Qd);
        const double rhs = Qd * pd / (sd * pd + Qd * pd - Qd);
        worst = std::max(worst, rel_diff(lhs, rhs));
        check(rel_diff(lhs, rhs) <= 1e-12, "identity at Q=" + std::to_string(Q));
        check(rel_diff(a.smallness, rhs) <= 1e-12, "implementation smallness at Q=" + std::to_string(Q));
        const ExactSmallness e = closed_form_smallness_exact(R(Q), s, p);
        check(e.smallness == R(Q) * p / (s * p + R(Q) * p - R(Q)), "exact smallness value");
        check(e.admissible == (R(Q) < s * p) && e.admissible == a.admissible, "smallness < 1 iff Q < sp");
        ++grid;
      }
      // Points with sp <= Q, including sp = Q exactly.
      for (const R& p : {qs, qs * R(3, 4), R(11, 10)}) {
        if (p <= R(1) || s * p > R(Q)) continue;
        const ExactSmallness e = closed_form_smallness_exact(R(Q), s, p);
        check(!e.admissible && e.smallness >= R(1), "sp <= Q must not be admissible");
        const AdmissibilityReport a =
            closed_form_D1_homogeneous(Q, boost::rational_cast<double>(s), boost::rational_cast<double>(p));
        check(!a.admissible || R(Q) < s * p, "floating verdict for sp <= Q");
      }
    }
  }
  check(grid >= 200, "grid has only " + std::to_string(grid) + " points");
  return check.done(std::to_string(grid) + " grid points, worst relative gap " + g(worst, 3));
}

// AC2: numeric D1 vs closed form on homogeneous groups.
Outcome ac2() {
  Check check;
  QuadratureConfig cfg;
  WeightSpec w;
  w.force_numeric = true;
  struct Point {
    const char* space;
    double s, p;
  };
  const std::vector<Point> pts = {
      {"group:Q=1", 0.6, 2.0},  {"group:Q=1", 0.8, 2.0},   {"group:Q=1", 0.9, 3.5},  {"group:Q=1", 0.3, 6.0},
      {"group:Q=2", 0.5, 5.0},  {"group:Q=2", 0.9, 2.5},   {"group:Q=2", 0.7, 9.0},  {"group:Q=3", 0.8, 4.0},
      {"group:Q=3", 0.95, 3.3}, {"group:Q=3", 0.5, 7.5},   {"group:Q=4", 0.75, 6.0}, {"group:Q=4", 0.9, 5.0},
      {"group:Q=4", 0.5, 9.5},  {"group:Q=5", 0.6, 9.0},   {"group:Q=5", 0.9, 6.0},  {"group:Q=6", 0.7, 9.0},
      {"group:Q=6", 0.95, 7.0}, {"heisenberg:1", 0.9, 5.0}, {"group:weights=1,1,2;norm=max", 0.8, 5.5},
      {"group:weights=1,2;norm=sum", 0.6, 6.0}};
  double worst = 0.0;
  for (const Point& pt : pts) {
    const SpacePtr s = parse_space(pt.space);
    const double Q = s->homogeneous_dimension();
    const double pc = pt.p / (pt.p - 1.0);
    const double closed = Q * std::pow(pt.p - 1.0, 1.0 / pc) / (pt.s * pt.p + Q * pt.p - Q);
    const AdmissibilityReport a = d1_fractional_hardy(*s, w, pt.s, pt.p, cfg);
    const double d = rel_diff(a.D1, closed);
    worst = std::max(worst, d);
    check(a.method == "numeric_radial", "numeric path not used");
    check(d <= 0.01, std::string(pt.space) + " s=" + g(pt.s) + " p=" + g(pt.p) + " D1=" + g(a.D1) + " vs " + g(closed));
  }
  return check.done(std::to_string(pts.size()) + " points, worst relative gap " + g(worst, 3));
}

// AC3: discrete bracket suite.
Outcome ac3() {
  Check check;
  const OracleSuiteResult r = run_oracle_suite(50, 200, 300, 20240917);
  check(r.spaces.size() == 50, "suite size");
  check(r.total_f == 50 * 200, "function count");
  check(r.violations == 0, std::to_string(r.violations) + " Hardy violations");
  check(r.search_violations == 0, std::to_string(r.search_violations) + " searches above the bound");
  double worst = 0.0;
  for (const OracleSpaceResult& s : r.spaces) worst = std::max(worst, s.worst_ratio);
  return check.done("50 spaces x 200 f, worst lhs/(C rhs) " + g(worst, 4) + ", search reached 0.9 D1 on " +
                    std::to_string(r.search_reaching_09) + "/50");
}

// AC4: logarithmic Hölder on discrete spaces.
Outcome ac4() {
  Check check;
  Rng rng(4242);
  int eq = 0;
  for (int t = 0; t < 200; ++t) {
    DiscreteSpace s = random_discrete_space(rng);
    double total = 0.0;
    for (double m : s.mass) total += m;
    for (double& m : s.mass) m /= total;
    std::vector<double> u(s.size(), 0.0);
    double muE = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i == 0 || uniform01(rng) < 0.5) {
        u[i] = 1.0;
        muE += s.mass[i];
      }
    const double p = 1.1 + 3.0 * uniform01(rng), q = p + 0.1 + 3.0 * uniform01(rng);
    const LogHolderSums r = log_holder_discrete(s.mass, u, p, q);
    const double expect = -std::log(muE);
    check(std::abs(r.lhs - expect) <= 1e-12 * std::max(1.0, expect), "indicator LHS");
    check(std::abs(r.rhs - expect) <= 1e-12 * std::max(1.0, expect), "indicator RHS");
    ++eq;
  }
  int random = 0;
  for (int t = 0; t < 1000; ++t) {
    const DiscreteSpace s = random_discrete_space(rng);
    std::vector<double> u(s.size());
    for (double& x : u) x = uniform01(rng) < 0.2 ? 0.0 : 4.0 * uniform01(rng) - 2.0;
    u[0] = 1.0;
    const double p = t % 2 ? 2.0 : 1.1 + 3.0 * uniform01(rng);
    const double q = t % 2 ? 3.0 : p + 0.05 + 4.0 * uniform01(rng);
    const LogHolderSums r = log_holder_discrete(s.mass, u, p, q);
    check(r.lhs <= r.rhs + 1e-12 * std::max(1.0, std::abs(r.rhs)), "random LHS > RHS");
    ++random;
  }
  return check.done(std::to_string(eq) + " indicator equalities, " + std::to_string(random) + " random cases");
}

std::function<double(double)> on_line(const TestFunction& f) {
  return [f](double x) { return f.radial_value(std::abs(x)); };
}

// AC5: fractional Hardy on the real line.
Outcome ac5() {
  Check check;
  QuadratureConfig cfg;
  const std::vector<std::string> funcs = {"gaussian(1,1)", "gaussian(0.7,2)", "power_decay(3,1)", "bump(1.5,1)",
                                          "ramp_indicator(1,0.5,1)"};
  double worst_ratio = 0.0, worst_sigma = 0.0, c08 = 0.0;
  int n = 0;
  for (double s : {0.6, 0.7, 0.8, 0.9}) {
    for (const std::string& id : funcs) {
      InequalityCase c;
      c.id = id;
      c.theorem = Theorem::GroupHardy;
      c.space = parse_space("euclidean:1");
      c.s = s;
      c.p = 2.0;
      c.q = 2.0;
      c.function_id = id;
      const VerificationReport r = verify_case(c, cfg);
      const std::string tag = id + " s=" + g(s);
      check(r.status == Status::Pass, tag + " status " + to_string(r.status) + " " + r.message);
      if (!r.ratio) continue;
      check(*r.ratio <= 1.0, tag + " ratio " + g(*r.ratio));
      worst_ratio = std::max(worst_ratio, *r.ratio);
      // Theorem constant: 2^{sp+Q} Q (sp+Qp-Q)^p / (|S| (sp-Q)^p) with Q = 1, |S| = 2.
      const double sp = 2.0 * s;
      const double k = std::pow(2.0, sp + 1.0) * std::pow(sp + 1.0, 2.0) / (2.0 * std::pow(sp - 1.0, 2.0));
      check(rel_diff(r.constant.value, k) <= 1e-13, tag + " constant");
      if (s == 0.8) c08 = r.constant.value;
      const TestFunction f = builtin(id);
      const double X = std::isfinite(f.support_radius) ? f.support_radius + 1.0 : 12.0;
      const oracle::Estimate o = oracle::gagliardo_line(on_line(f), 2.0, sp + 1.0, X);
      const double se = std::hypot(r.rhs.error_estimate + r.rhs.truncation_bound, o.error);
      const double sigma = std::abs(r.rhs.value - o.value) / se;
      worst_sigma = std::max(worst_sigma, sigma);
      check(sigma <= 3.0, tag + " RHS " + g(r.rhs.value, 8) + " vs grid " + g(o.value, 8));
      ++n;
    }
  }
  check(std::abs(c08 - 56.92) < 0.005, "constant at s=0.8 is " + g(c08));
  return check.done(std::to_string(n) + " reports, max ratio " + g(worst_ratio, 3) + ", C(0.8)=" + g(c08, 6) +
                    ", worst RHS gap " + g(worst_sigma, 3) + " SE");
}

// AC6: A of the Hardy-Sobolev theorem is 1 for unit weights.
Outcome ac6() {
  Check check;
  QuadratureConfig cfg;
  WeightSpec w;
  w.force_numeric = true;
  Rng rng(66);
  double worst = 0.0;
  int n = 0;
  for (const char* d : {"euclidean:1", "euclidean:3", "group:weights=1,1,2;norm=max", "group:weights=1,2;norm=sum",
                        "heisenberg:1", "hyperbolic:2", "radial:Q=3;sphere=2"}) {
    const SpacePtr s = parse_space(d);
    for (int i = 0; i < 100; ++i) {
      const double r = std::exp(std::log(1e-3) + std::log(1e5) * uniform01(rng));
      const SpacePoint x = s->from_polar(r, s->sample_direction(rng));
      const double p = 1.1 + 4.0 * uniform01(rng), q = p + 3.0 * uniform01(rng);
      const double a = compute_A_hs(*s, w, p, q, x, cfg);
      worst = std::max(worst, std::abs(a - 1.0));
      check(std::abs(a - 1.0) <= 1e-6, std::string(d) + " A=" + g(a, 10));
      ++n;
    }
  }
  return check.done(std::to_string(n) + " points in 7 models, worst |A-1| " + g(worst, 3));
}

// AC7: Heisenberg geometry.
Outcome ac7() {
  Check check;
  const SpacePtr h = parse_space("heisenberg:1");
  const double omega = std::numbers::pi * std::numbers::pi / 2.0;
  const IntegralResult v = estimate_unit_ball_volume(*h, 1000000, 77);
  check(rel_diff(v.value, omega) <= 0.005, "ball volume " + g(v.value));
  const BetaEstimate b = estimate_beta(*h, 1000000, 78);
  check(b.beta >= 1.0 && b.beta <= 1.05, "beta " + g(b.beta));
  Rng rng(79);
  double worst = 0.0;
  for (int n : {1, 2}) {
    const std::size_t dim = 2 * n + 1;
    for (int i = 0; i < 2000; ++i) {
      SpacePoint a(dim), c(dim), d(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        a[k] = 6.0 * uniform01(rng) - 3.0;
        c[k] = 6.0 * uniform01(rng) - 3.0;
        d[k] = 6.0 * uniform01(rng) - 3.0;
      }
      const SpacePoint l = heisenberg_compose(heisenberg_compose(a, c, n), d, n);
      const SpacePoint r = heisenberg_compose(a, heisenberg_compose(c, d, n), n);
      const SpacePoint e1 = heisenberg_compose(a, heisenberg_inverse(a), n);
      const SpacePoint e2 = heisenberg_compose(heisenberg_inverse(a), a, n);
      for (std::size_t k = 0; k < dim; ++k) {
        worst = std::max({worst, std::abs(l[k] - r[k]), std::abs(e1[k]), std::abs(e2[k])});
      }
    }
  }
  check(worst <= 1e-12, "group law residual " + g(worst, 3));
  return check.done("|B(1)|=" + g(v.value, 6) + " (pi^2/2=" + g(omega, 6) + "), beta=" + g(b.beta, 6) +
                    ", group law residual " + g(worst, 3));
}

// AC8: fractional Hardy on the Heisenberg group.
Outcome ac8() {
  Check check;
  const BetaEstimate b = estimate_beta(*parse_space("heisenberg:1"), 1000000, 81);
  const SpacePtr h = parse_space("heisenberg:1;beta=" + g(b.beta, 12));
  QuadratureConfig cfg;
  double worst = 0.0;
  int n = 0;
  for (double s : {0.9, 0.95}) {
    const double p = 5.0, Q = 4.0, sp = s * p;
    const double omega = std::numbers::pi * std::numbers::pi / 2.0;
    const double k = std::pow(b.beta + 1.0, sp + Q) * std::pow(sp + Q * p - Q, p) / (omega * std::pow(sp - Q, p));
    for (const char* id : {"gaussian(1,1)", "bump(1.5,1)", "power_decay(3,1)"}) {
      InequalityCase c;
      c.id = id;
      c.theorem = Theorem::HeisenbergHardy;
      c.space = h;
      c.s = s;
      c.p = p;
      c.q = p;
      c.function_id = id;
      const VerificationReport r = verify_case(c, cfg);
      const std::string tag = std::string(id) + " s=" + g(s);
      check(r.status == Status::Pass, tag + " status " + to_string(r.status) + " " + r.message);
      check(rel_diff(r.constant.value, k) <= 1e-12, tag + " constant " + g(r.constant.value));
      if (r.ratio) {
        check(*r.ratio <= 1.0, tag + " ratio " + g(*r.ratio));
        worst = std::max(worst, *r.ratio);
      }
      ++n;
    }
  }
  return check.done(std::to_string(n) + " reports, beta=" + g(b.beta, 6) + ", max ratio " + g(worst, 3));
}

// AC9: Nash and log Hardy-Sobolev with scaling.
Outcome ac9() {
  Check check;
  QuadratureConfig cfg;
  const TestFunction u = builtin("gaussian(1,1)");
  double worst_exp = 0.0, worst_log = 0.0;
  for (double q : {3.0, 4.0}) {
    InequalityCase c;
    c.id = "gaussian(1,1)";
    c.space = parse_space("euclidean:1");
    c.s = 0.8;
    c.p = 2.0;
    c.q = q;
    c.function_id = c.id;
    c.theorem = Theorem::NashType;
    const VerificationReport n1 = verify_nash(c, u, cfg);
    c.theorem = Theorem::LogHardySobolev;
    const VerificationReport l1 = verify_log_hardy_sobolev(c, u, cfg);
    check(n1.status == Status::Pass, "Nash q=" + g(q) + " " + to_string(n1.status) + " " + n1.message);
    check(l1.status == Status::Pass, "log-HS q=" + g(q) + " " + to_string(l1.status) + " " + l1.message);
    for (double k : {0.25, 3.7}) {
      const TestFunction cu = u.scaled(k);
      c.theorem = Theorem::NashType;
      const VerificationReport n2 = verify_nash(c, cu, cfg);
      c.theorem = Theorem::LogHardySobolev;
      const VerificationReport l2 = verify_log_hardy_sobolev(c, cu, cfg);
      check(n2.pass == n1.pass && l2.pass == l1.pass, "verdict changed under scaling");
      const double e = 4.0 - 4.0 / q;
      const double el = std::log(n2.lhs.value / n1.lhs.value) / std::log(k);
      const double er = std::log(n2.rhs.value / n1.rhs.value) / std::log(k);
      worst_exp = std::max({worst_exp, std::abs(el - e), std::abs(er - e)});
      check(std::abs(el - e) <= 1e-8 && std::abs(er - e) <= 1e-8,
            "Nash exponents " + g(el, 12) + ", " + g(er, 12) + " vs " + g(e, 12));
      if (l1.ratio && l2.ratio) {
        worst_log = std::max(worst_log, rel_diff(*l1.ratio, *l2.ratio));
        check(rel_diff(*l1.ratio, *l2.ratio) <= 1e-8, "log-HS ratio drift " + g(rel_diff(*l1.ratio, *l2.ratio), 3));
      }
    }
  }
  return check.done("Nash and log-HS pass for q=3,4; scaling exponent error " + g(worst_exp, 3) +
                    ", log-HS ratio drift " + g(worst_log, 3));
}

struct Criterion {
  const char* name;
  const char* title;
  double budget;  // seconds
  Outcome (*run)();
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"AC1", "closed-form D1 identity", 1.0, ac1},
      {"AC2", "numeric vs closed-form D1", 30.0, ac2},
      {"AC3", "discrete oracle bracket", 20.0, ac3},
      {"AC4", "logarithmic Hoelder on discrete spaces", 5.0, ac4},
      {"AC5", "fractional Hardy on R", 120.0, ac5},
      {"AC6", "Hardy-Sobolev weight collapse", 10.0, ac6},
      {"AC7", "Heisenberg geometry", 60.0, ac7},
      {"AC8", "Heisenberg fractional Hardy", 180.0, ac8},
      {"AC9", "Nash and log-HS composition", 60.0, ac9},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  int failed = 0, ran = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && only != c.name) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > c.budget) {
      o.pass = false;
      o.detail += "; over the " + g(c.budget) + " s budget";
    }
    std::printf("%s %s  %s (%.2f s): %s\n", c.name, o.pass ? "PASS" : "FAIL", c.title, dt, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 1;
  }
  return failed == 0 ? 0 : 1;
}
