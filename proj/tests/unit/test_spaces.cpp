#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardy/spaces.hpp"

using namespace hardy;
using doctest::Approx;

TEST_SUITE("spaces") {

TEST_CASE("euclidean distance and ball volume") {
  const SpacePtr e2 = parse_space("euclidean:2");
  CHECK(e2->distance({0.0, 0.0}, {3.0, 4.0}) == Approx(5.0).epsilon(1e-15));
  CHECK(e2->ball_volume(1.0) == Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(e2->ball_volume(0.0) == 0.0);
  const SpacePtr e3 = parse_space("euclidean:3");
  CHECK(e3->polar_weight(2.0) == Approx(4.0).epsilon(1e-15));
}

TEST_CASE("polar weights of the other models") {
  CHECK(parse_space("group:Q=4")->polar_weight(2.0) == Approx(8.0).epsilon(1e-15));
  CHECK(parse_space("hyperbolic:2")->polar_weight(1.0) == Approx(std::sinh(1.0)).epsilon(1e-15));
  CHECK(parse_space("hyperbolic:2")->polar_weight(1.0) == Approx(1.1752011936).epsilon(1e-9));
}

TEST_CASE("heisenberg gauge and group law") {
  const SpacePtr h = parse_space("heisenberg:1");
  const SpacePoint o(3);
  CHECK(h->distance(o, {1.0, 0.0, 0.0}) == Approx(1.0).epsilon(1e-15));
  CHECK(h->distance(o, {0.0, 0.0, 1.0}) == Approx(1.0).epsilon(1e-15));

  const SpacePoint c = heisenberg_compose({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, 1);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == 1.0);
  CHECK(c[2] == Approx(0.5).epsilon(1e-15));

  const SpacePoint z = heisenberg_compose({0.0, 0.0, 0.3}, {0.0, 0.0, 1.2}, 1);
  CHECK(z[2] == Approx(1.5).epsilon(1e-15));

  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    SpacePoint a(3), b(3), d(3);
    for (int k = 0; k < 3; ++k) {
      a[k] = 4.0 * uniform01(rng) - 2.0;
      b[k] = 4.0 * uniform01(rng) - 2.0;
      d[k] = 4.0 * uniform01(rng) - 2.0;
    }
    const SpacePoint id = heisenberg_compose(a, heisenberg_inverse(a), 1);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(id[k]) <= 1e-12);
    const SpacePoint l = heisenberg_compose(heisenberg_compose(a, b, 1), d, 1);
    const SpacePoint r = heisenberg_compose(a, heisenberg_compose(b, d, 1), 1);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(l[k] - r[k]) <= 1e-12);
  }
}

TEST_CASE("heisenberg unit ball volume") {
  // int_0^1 2 pi rho 2 sqrt(1 - rho^4) d rho
  CHECK(heisenberg_unit_ball_volume(1) == Approx(4.934802200544679).epsilon(1e-13));
  const IntegralResult mc = estimate_unit_ball_volume(*parse_space("heisenberg:1"), 200000, 3);
  CHECK(std::abs(mc.value - 4.934802200544679) <= 4.0 * mc.error_estimate);
}

TEST_CASE("quasi-triangle ratio for collinear central points") {
  const SpacePoint xi{0.0, 0.0, 1.0};
  const SpacePoint c = heisenberg_compose(xi, xi, 1);
  const double ratio = (koranyi_norm(c, 1) - koranyi_norm(xi, 1)) / koranyi_norm(xi, 1);
  CHECK(ratio == Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("beta estimate stays in [1, 1.05]") {
  const BetaEstimate b = estimate_beta(*parse_space("heisenberg:1"), 20000, 11, 8, 100);
  CHECK(b.beta >= 1.0);
  CHECK(b.beta <= 1.05);
}

TEST_CASE("metric axioms and homogeneity on sampled points") {
  for (const char* d : {"euclidean:3", "group:weights=1,1,2;norm=max", "group:weights=1,2;norm=sum", "heisenberg:1",
                        "hyperbolic:2"}) {
    CAPTURE(d);
    const SpacePtr s = parse_space(d);
    CHECK(s->homogeneous_dimension() > 0.0);
    CHECK(s->sphere_measure() > 0.0);
    CHECK(s->quasi_triangle_beta() >= 1.0);
    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
      const SpacePoint x = s->from_polar(3.0 * uniform01(rng), s->sample_direction(rng));
      const SpacePoint y = s->from_polar(3.0 * uniform01(rng), s->sample_direction(rng));
      CHECK(s->distance(x, x) == Approx(0.0));
      CHECK(s->distance(x, y) == Approx(s->distance(y, x)).epsilon(1e-12));
      CHECK(x.all_finite());
      CHECK(x.dim() == s->dim());
    }
  }
}

TEST_CASE("ball volumes are monotone") {
  for (const char* d : {"euclidean:2", "group:Q=4", "heisenberg:1", "hyperbolic:3"}) {
    const SpacePtr s = parse_space(d);
    double prev = 0.0;
    for (double r = 0.1; r < 5.0; r += 0.1) {
      const double v = s->ball_volume(r);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("group ball model uses |S|/Q and exponent Q") {
  const SpacePtr g = parse_space("group:Q=4");
  const BallVolumeModel m = g->ball_model();
  CHECK(m.closed_form);
  CHECK(m.exponent == 4.0);
  CHECK(m.coefficient == Approx(g->sphere_measure() / 4.0).epsilon(1e-14));
}

TEST_CASE("descriptors round trip") {
  for (const char* d : {"euclidean:2", "group:Q=4", "heisenberg:1", "hyperbolic:2", "radial:Q=3;sphere=2"}) {
    const SpacePtr s = parse_space(d);
    CHECK(parse_space(s->descriptor())->descriptor() == s->descriptor());
  }
  CHECK_THROWS_AS(parse_space("torus:2"), InvalidInput);
  CHECK_THROWS_AS(parse_space("euclidean:0"), InvalidInput);
}

}
