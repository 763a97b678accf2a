#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../oracles/tensor_grid.hpp"
#include "hardy/corpus.hpp"
#include "hardy/error.hpp"
#include "hardy/quadrature.hpp"

using namespace hardy;
using doctest::Approx;

namespace {

// |u(x) - u(y)|^p d^{-e} on the line for a radial profile.
PairIntegrand line_pair(std::function<double(double)> u, double p, double e) {
  PairIntegrand f;
  f.kernel = [e](double d) { return std::pow(d, -e); };
  f.diff_power = p;
  f.length_scale = 0.5;
  f.core_radius = 2.0;
  f.F = [u, p, e](const SpacePoint& x, const SpacePoint& y, double d) {
    return std::pow(std::abs(u(x[0]) - u(y[0])), p) * std::pow(d, -e);
  };
  f.location_profile = [u, p](double r) { return std::pow(std::abs(u(r)), p); };
  return f;
}

double combined(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("radial integral of 1 over the unit disk") {
  QuadratureConfig cfg;
  RadialHints h;
  h.support = 1.0;
  const IntegralResult r = radial_integral([](double) { return 1.0; }, *parse_space("euclidean:2"), cfg, h);
  CHECK(r.value == Approx(std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("radial power below the critical exponent") {
  const SpacePtr g = parse_space("group:Q=4");
  QuadratureConfig cfg;
  RadialHints h;
  h.support = 1.0;
  const double sp = 1.5;
  const IntegralResult r = radial_integral([sp](double x) { return std::pow(x, -sp); }, *g, cfg, h);
  CHECK(r.value == Approx(g->sphere_measure() / (4.0 - sp)).epsilon(1e-7));
  const double sp2 = 4.0;
  CHECK_THROWS_AS(radial_integral([sp2](double x) { return std::pow(x, -sp2); }, *g, cfg, h), DivergenceError);
}

TEST_CASE("seminorm of a constant vanishes") {
  QuadratureConfig cfg;
  cfg.mc_samples = 20000;
  const IntegralResult r = double_singular_integral(line_pair([](double) { return 3.0; }, 2.0, 2.6),
                                                    *parse_space("euclidean:1"), cfg);
  CHECK(r.value == 0.0);
}

TEST_CASE("gaussian gagliardo integral against the tensor grid") {
  auto u = [](double x) { return std::exp(-x * x); };
  QuadratureConfig cfg;
  const IntegralResult r = double_singular_integral(line_pair(u, 2.0, 2.6), *parse_space("euclidean:1"), cfg);
  const oracle::Estimate o = oracle::gagliardo_line(u, 2.0, 2.6, 8.0);
  CHECK(std::abs(r.value - o.value) <= 3.0 * combined(r.error_estimate, o.error));
  // Fourier closed form 4 sqrt(pi/2) 2^{-0.8} Gamma(0.2) / 1.6.
  CHECK(o.value == Approx(8.26168170041273).epsilon(1e-6));
}

TEST_CASE("dilation scales the gagliardo integral by 2^{sp-Q}") {
  auto u = [](double x) { return std::exp(-x * x); };
  auto u2 = [](double x) { return std::exp(-4.0 * x * x); };
  QuadratureConfig cfg;
  const SpacePtr line = parse_space("euclidean:1");
  const IntegralResult a = double_singular_integral(line_pair(u, 2.0, 2.6), *line, cfg);
  const IntegralResult b = double_singular_integral(line_pair(u2, 2.0, 2.6), *line, cfg);
  const double f = std::pow(2.0, 1.6 - 1.0);
  CHECK(std::abs(b.value - f * a.value) <= 3.0 * combined(b.error_estimate, f * a.error_estimate));
}

TEST_CASE("mixed norm with exponent 1 matches the double integral") {
  auto u = [](double x) { return std::abs(x) * std::exp(-x * x); };
  QuadratureConfig cfg;
  const SpacePtr line = parse_space("euclidean:1");
  MixedIntegrand m;
  m.inner = line_pair(u, 2.0, 2.6);
  m.outer_weight = [](const SpacePoint&) { return 1.0; };
  m.exponent = 1.0;
  const IntegralResult a = mixed_norm_integral(m, *line, cfg);
  const IntegralResult b = double_singular_integral(m.inner, *line, cfg);
  CHECK(std::abs(a.value - b.value) <= 3.0 * combined(a.error_estimate, b.error_estimate));
}

TEST_CASE("mixed norm of a constant vanishes") {
  QuadratureConfig cfg;
  MixedIntegrand m;
  m.inner = line_pair([](double) { return -1.0; }, 2.0, 2.6);
  m.outer_weight = [](const SpacePoint&) { return 1.0; };
  m.exponent = 1.5;
  CHECK(mixed_norm_integral(m, *parse_space("euclidean:1"), cfg).value == 0.0);
}

TEST_CASE("mixed norm p=2 q=3 against the tensor grid") {
  auto u = [](double x) { return std::abs(x) * std::exp(-x * x); };
  QuadratureConfig cfg;
  MixedIntegrand m;
  m.inner = line_pair(u, 2.0, 2.6);
  m.outer_weight = [](const SpacePoint&) { return 1.0; };
  m.exponent = 1.5;
  const IntegralResult r = mixed_norm_integral(m, *parse_space("euclidean:1"), cfg);
  const oracle::Estimate o = oracle::mixed_line(u, 2.0, 2.6, 1.5, 8.0);
  CHECK(std::abs(r.value - o.value) <= 3.0 * combined(r.error_estimate + r.truncation_bound, o.error));
}

TEST_CASE("monte carlo estimates are reproducible for a seed") {
  auto u = [](double x) { return std::exp(-x * x); };
  QuadratureConfig cfg;
  cfg.mc_samples = 30000;
  const SpacePtr line = parse_space("euclidean:1");
  const IntegralResult a = double_singular_integral(line_pair(u, 2.0, 2.6), *line, cfg);
  cfg.threads = 3;
  const IntegralResult b = double_singular_integral(line_pair(u, 2.0, 2.6), *line, cfg);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
}

TEST_CASE("heisenberg pair integral is finite for a bump") {
  const SpacePtr h = parse_space("heisenberg:1");
  const TestFunction b = builtin("bump(1.5,1)");
  PairIntegrand f;
  const double e = 4.5 + 4.0;
  f.kernel = [e](double d) { return std::pow(d, -e); };
  f.diff_power = 5.0;
  f.length_scale = 0.3;
  f.core_radius = 1.5;
  f.F = [h, b, e](const SpacePoint& x, const SpacePoint& y, double d) {
    return std::pow(std::abs(b.eval(*h, x) - b.eval(*h, y)), 5.0) * std::pow(d, -e);
  };
  f.location_profile = [b](double r) { return std::pow(std::abs(b.radial_value(r)), 5.0); };
  QuadratureConfig cfg;
  cfg.mc_samples = 50000;
  const IntegralResult r = double_singular_integral(f, *h, cfg);
  CHECK(std::isfinite(r.value));
  CHECK(r.value > 0.0);
  CHECK(r.error_estimate < 0.2 * r.value);
}

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  cfg.mc_samples = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
}

}
