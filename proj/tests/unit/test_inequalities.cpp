#include <doctest.h>

#include <cmath>

#include "hardy/inequalities.hpp"

using namespace hardy;
using doctest::Approx;

namespace {

InequalityCase make(Theorem t, const std::string& space, double s, double p, double q, const std::string& u) {
  InequalityCase c;
  c.id = u;
  c.theorem = t;
  c.space = parse_space(space);
  c.s = s;
  c.p = p;
  c.q = q;
  c.function_id = u;
  return c;
}

QuadratureConfig quick() {
  QuadratureConfig cfg;
  cfg.rel_tolerance = 1e-6;
  cfg.mc_samples = 50000;
  return cfg;
}

}  // namespace

TEST_SUITE("inequalities") {

TEST_CASE("u = 0 passes every theorem") {
  const QuadratureConfig cfg = quick();
  for (Theorem t : {Theorem::FractionalHardy, Theorem::GroupHardy, Theorem::FractionalHardySobolev,
                    Theorem::GroupHardySobolev, Theorem::NashType, Theorem::IntegralHardy}) {
    InequalityCase c = make(t, "euclidean:1", 0.8, 2.0, 3.0, "zero");
    c.hardy_g = parse_weight("power(-2)");
    const VerificationReport r = verify_case(c, cfg);
    CAPTURE(std::string(to_string(t)));
    CHECK(r.status == Status::Pass);
    CHECK(r.lhs.value == 0.0);
  }
}

TEST_CASE("constants on the line") {
  const InequalityCase g = make(Theorem::GroupHardy, "euclidean:1", 0.8, 2.0, 2.0, "zero");
  CHECK(closed_form_constant(g).value == Approx(56.9235777200571840).epsilon(1e-13));
  // Generic and closed forms coincide for unit weights.
  const AdmissibilityReport a = closed_form_D1_homogeneous(1.0, 0.8, 2.0);
  CHECK(generic_hardy_constant(0.8, 2.0, a.smallness) == Approx(56.9235777200571840).epsilon(1e-13));
}

TEST_CASE("heisenberg constants") {
  InequalityCase c = make(Theorem::HeisenbergHardy, "heisenberg:1", 0.9, 5.0, 5.0, "zero");
  const ConstantInfo k = closed_form_constant(c);
  CHECK(k.value == Approx(8499717606.63711180705).epsilon(1e-12));
  CHECK(k.provenance == "paper_closed_form");
  c.s = 0.95;
  CHECK(closed_form_constant(c).value == Approx(1414252322.50527462781).epsilon(1e-12));
  c.s = 0.8;
  CHECK_THROWS_AS(closed_form_constant(c), InvalidInput);
}

TEST_CASE("constant blows up as sp decreases to Q") {
  double prev = 0.0;
  for (double eps : {0.2, 0.1, 0.05, 0.01, 0.001}) {
    const double k = closed_form_constant(make(Theorem::GroupHardy, "euclidean:1", 0.5 + eps, 2.0, 2.0, "zero")).value;
    CHECK(k > prev);
    prev = k;
  }
  CHECK(prev > 1e6);
}

TEST_CASE("sp <= Q is a hypothesis violation") {
  const VerificationReport r = verify_case(make(Theorem::GroupHardy, "group:Q=4", 0.5, 2.0, 2.0, "gaussian(1,1)"), quick());
  CHECK(r.status == Status::HypothesisViolated);
  CHECK_FALSE(is_decided(r.status));
}

TEST_CASE("a function not vanishing at the pole has a divergent LHS") {
  const VerificationReport r = verify_case(make(Theorem::GroupHardy, "euclidean:1", 0.8, 2.0, 2.0, "gaussian(1)"), quick());
  CHECK(r.status == Status::LhsDivergent);
}

TEST_CASE("fractional Hardy on the line passes") {
  const VerificationReport r =
      verify_case(make(Theorem::GroupHardy, "euclidean:1", 0.8, 2.0, 2.0, "gaussian(1,1)"), quick());
  CHECK(r.status == Status::Pass);
  REQUIRE(r.ratio);
  CHECK(*r.ratio <= 1.0);
  CHECK(r.constant.value == Approx(56.9235777200571840).epsilon(1e-13));
}

TEST_CASE("Hardy-Sobolev LHS reduces to the unweighted integral") {
  InequalityCase c = make(Theorem::FractionalHardySobolev, "euclidean:1", 0.8, 2.0, 3.0, "gaussian(1,1)");
  c.weights.force_numeric = true;
  const VerificationReport r = verify_case(c, quick());
  // int |x|^3 e^{-3x^2} |x|^{-2.4} dx = Gamma(0.8) / 3^{0.8}
  CHECK(r.lhs.value == Approx(std::tgamma(0.8) / std::pow(3.0, 0.8)).epsilon(1e-4));
  CHECK(r.status == Status::Pass);
}

TEST_CASE("Sobolev form with q = p matches the Hardy form") {
  const QuadratureConfig cfg = quick();
  const VerificationReport a = verify_case(make(Theorem::GroupHardy, "euclidean:1", 0.8, 2.0, 2.0, "bump(1.5,1)"), cfg);
  const VerificationReport b =
      verify_case(make(Theorem::GroupHardySobolev, "euclidean:1", 0.8, 2.0, 2.0, "bump(1.5,1)"), cfg);
  CHECK(a.constant.value == Approx(b.constant.value).epsilon(1e-13));
  CHECK(a.lhs.value == Approx(b.lhs.value).epsilon(1e-6));
  const double err = 3.0 * std::hypot(a.rhs.error_estimate, b.rhs.error_estimate);
  CHECK(std::abs(a.rhs.value - b.rhs.value) <= err + a.rhs.truncation_bound + b.rhs.truncation_bound);
}

TEST_CASE("log Hardy-Sobolev composes its sub-inequalities") {
  const QuadratureConfig cfg = quick();
  const InequalityCase base = make(Theorem::LogHardySobolev, "euclidean:1", 0.8, 2.0, 3.0, "gaussian(1,1)");
  const VerificationReport l = verify_case(base, cfg);
  InequalityCase h = base;
  h.theorem = Theorem::FractionalHardySobolev;
  const VerificationReport hs = verify_case(h, cfg);
  CHECK(hs.status == Status::Pass);
  CHECK(l.status == Status::Pass);
  CHECK(l.extras.count("holder_rhs") == 1);
}

TEST_CASE("continuous logarithmic hoelder") {
  const VerificationReport r = verify_case(make(Theorem::LogHolder, "euclidean:1", 0.0, 2.0, 3.0, "gaussian(1)"), quick());
  CHECK(r.status == Status::Pass);
}

TEST_CASE("integral Hardy with power weights") {
  InequalityCase c = make(Theorem::IntegralHardy, "euclidean:1", 0.0, 2.0, 2.0, "bump(1.5)");
  // sup_r (int_{|y|>=r} |y|^{-2})^{1/2} (2r)^{1/2} = 2
  c.hardy_g = parse_weight("power(-2)");
  c.hardy_h = parse_weight("unit");
  const VerificationReport r = verify_case(c, quick());
  CHECK(r.status == Status::Pass);
  REQUIRE(r.ratio);
  CHECK(*r.ratio <= 1.0);
  REQUIRE(r.d1);
  CHECK(r.d1->D1 == Approx(2.0).epsilon(1e-6));
}

TEST_CASE("integral Hardy with unit weights is not admissible") {
  const VerificationReport r = verify_case(make(Theorem::IntegralHardy, "euclidean:1", 0.0, 2.0, 2.0, "bump(1.5)"), quick());
  CHECK(r.status == Status::NotAdmissible);
}

TEST_CASE("theorem names round trip") {
  for (Theorem t : {Theorem::IntegralHardy, Theorem::FractionalHardy, Theorem::NashType, Theorem::HeisenbergHardySobolev})
    CHECK(parse_theorem(to_string(t)) == t);
  CHECK_THROWS_AS(parse_theorem("Poincare"), InvalidInput);
}

TEST_CASE("errors become reports") {
  InequalityCase c = make(Theorem::GroupHardy, "euclidean:1", 0.8, 2.0, 2.0, "nope(1)");
  const VerificationReport r = verify_case(c, quick());
  CHECK(r.status == Status::Error);
  CHECK_FALSE(r.message.empty());
}

}
