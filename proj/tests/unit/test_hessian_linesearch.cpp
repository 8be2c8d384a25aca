#include "sparse_pd/hessian.hpp"
#include "sparse_pd/linesearch.hpp"

#include <doctest.h>

using namespace sparse_pd;

namespace {
Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }
}  // namespace

TEST_SUITE("hessian") {
  TEST_CASE("memory ring") {
    CurvatureMemory mem(2);
    mem = update_memory(mem, v2(1, 0), v2(0, 0), v2(2, 0), v2(0, 0));
    CHECK(mem.size() == 1);
    mem = update_memory(mem, v2(2, 0), v2(1, 0), v2(3, 0), v2(2, 0));
    mem = update_memory(mem, v2(3, 1), v2(2, 0), v2(5, 1), v2(3, 0));
    CHECK(mem.size() == 2);
    CHECK(mem.S.back() == v2(1, 1));
    CHECK(mem.S.front() == v2(1, 0));
    const CurvatureMemory same = update_memory(mem, v2(3, 1), v2(3, 1), v2(9, 9), v2(5, 1));
    CHECK(same.size() == 2);
    CHECK(same.S.back() == v2(1, 1));
  }

  TEST_CASE("diagonal updates") {
    SolverConfig cfg;
    CurvatureMemory mem;
    mem = update_memory(mem, v2(1, 0), v2(0, 0), v2(2, 0), v2(0, 0));
    const Vector d_prev = Vector::Ones(2);
    const Vector lm1 = diag_update(HessianKind::LM1, mem, d_prev, cfg);
    CHECK(lm1[0] == doctest::Approx(2.0));
    CHECK(lm1[1] == cfg.lambda_min);

    CurvatureMemory unit;
    unit = update_memory(unit, v2(1, 2), v2(0, 0), v2(1, 2), v2(0, 0));
    CHECK(diag_update(HessianKind::LM2, unit, d_prev * 7, cfg) == Vector::Ones(2));
    CHECK(diag_update(HessianKind::LM3, CurvatureMemory{}, d_prev * 3, cfg) == d_prev * 3);

    CurvatureMemory neg;
    neg = update_memory(neg, v2(1, 1), v2(0, 0), v2(-3, 0.5), v2(0, 0));
    for (HessianKind k : {HessianKind::D, HessianKind::LM1, HessianKind::LM2, HessianKind::LM3}) {
      const Vector d = diag_update(k, neg, d_prev, cfg);
      CHECK(d.minCoeff() >= cfg.lambda_min);
      CHECK(d.maxCoeff() <= cfg.lambda_max);
      CHECK(d == diag_update(k, neg, d_prev, cfg));
    }
  }

  TEST_CASE("initial diagonal") {
    SolverConfig cfg;
    cfg.mu = 1e9;
    CHECK(initial_diagonal(3, cfg) == Vector::Constant(3, cfg.lambda_max));
  }
}

TEST_SUITE("linesearch") {
  const PenaltyModel M{v2(0, 0), v2(1, -1), v2(2, 2), 1.0};
  const Vector y = v2(1, 0);

  TEST_CASE("zero direction stagnates") {
    const auto r = line_search(M, v2(0.5, 0.5), y, v2(0.5, 0.5));
    CHECK(r.stagnation);
    CHECK(r.alpha == 0.0);
    CHECK(r.x == v2(0.5, 0.5));
  }

  TEST_CASE("exact minimizer takes the unit step") {
    const Vector xs = solve_x(M, y);
    const auto r = line_search(M, v2(2, 2), y, xs);
    CHECK_FALSE(r.stagnation);
    CHECK(r.alpha == 1.0);
    CHECK((r.x - xs).norm() <= 1e-15);
  }

  TEST_CASE("short target extrapolates") {
    const Vector xs = solve_x(M, y);
    const Vector x_cur = v2(2, 2);
    const auto r = line_search(M, x_cur, y, x_cur + 0.5 * (xs - x_cur));
    CHECK(r.alpha == 2.0);
    CHECK((r.x - xs).norm() <= 1e-12);
  }

  TEST_CASE("disabled search returns the target") {
    const auto r = line_search(M, v2(2, 2), y, v2(5, 5), 1e-10, false);
    CHECK(r.alpha == 1.0);
    CHECK(r.x == v2(5, 5));
  }
}
