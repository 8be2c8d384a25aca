#include "sparse_pd/core.hpp"

#include <doctest.h>

#include <cmath>

using namespace sparse_pd;

TEST_SUITE("core") {
  TEST_CASE("tolerance schedule") {
    CHECK(tolerance_schedule(0, 2.2e-16).eps == doctest::Approx(0.1));
    CHECK(tolerance_schedule(100000000, 1e-12).eps == 1e-12);
    CHECK(tolerance_schedule(1000, 1e-16).eps == doctest::Approx(0.1 * std::exp(-1.0)).epsilon(1e-12));
    const Tolerances t = tolerance_schedule(37, 1e-9);
    CHECK(t.eps == t.eta);
  }

  TEST_CASE("assumption validator") {
    const AssumptionReport a = validate_assumptions(1, 1, 1, 10, 1);
    CHECK(a.theta_bar == doctest::Approx(2.0 / 11.0));
    CHECK(a.kappa_bar == doctest::Approx(1.0));
    CHECK(a.c_min == doctest::Approx(11.0 / 9.0));
    CHECK(a.R_inf == doctest::Approx(11.0 / 9.0));
    CHECK(a.ok);

    const AssumptionReport b = validate_assumptions(1, 1, 1, 1, 1);
    CHECK(b.theta_bar == doctest::Approx(1.0));
    CHECK_FALSE(b.ok);

    const AssumptionReport c = validate_assumptions(1, 2, 0.5, 5, 2);
    CHECK(c.theta_bar == doctest::Approx(2.5 / 6.0));
    CHECK(c.kappa_bar == doctest::Approx(1.0));
    CHECK(c.ok);
  }

  TEST_CASE("set descriptor") {
    CHECK(SetDescriptor::full_space().symmetry() == Symmetry::Type2);
    CHECK(SetDescriptor::lp_ball(2, 1).symmetry() == Symmetry::Type2);
    CHECK(SetDescriptor::simplex().symmetry() == Symmetry::NonnegType1);
    CHECK(SetDescriptor::nonneg_orthant().symmetry() == Symmetry::NonnegType1);
    CHECK_THROWS_AS(SetDescriptor::lp_ball(0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(SetDescriptor::box(1, 0), std::invalid_argument);

    Vector x(3);
    x << 0.5, 0.5, 0.0;
    CHECK(SetDescriptor::simplex().contains(x));
    x[2] = 1e-9;
    CHECK_FALSE(SetDescriptor::simplex().contains(x));
    CHECK(SetDescriptor::parse(SetDescriptor::box(-1, 2).to_string()).to_string() == SetDescriptor::box(-1, 2).to_string());
  }

  TEST_CASE("symmetry scores") {
    Vector v(3);
    v << -2, 1, 3;
    CHECK(symmetry_scores(v, Symmetry::Type2) == Vector(Vector::Map(std::array<double, 3>{2, 1, 3}.data(), 3)));
    CHECK(symmetry_scores(v, Symmetry::NonnegType1) == v);
  }

  TEST_CASE("config parsing and validation") {
    const SolverConfig cfg = parse_config("# comment\nr = 1.2\nhessian = lm2\nmemory = 5\nlinesearch = off\n");
    CHECK(cfg.r == 1.2);
    CHECK(cfg.hessian == HessianKind::LM2);
    CHECK(cfg.memory == 5);
    CHECK_FALSE(cfg.line_search);
    CHECK_THROWS_AS(parse_config("bogus = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("r = 0.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_hessian_kind("lm9"), std::invalid_argument);
    SolverConfig bad;
    bad.rho_min = 10;
    bad.rho_max = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
}
