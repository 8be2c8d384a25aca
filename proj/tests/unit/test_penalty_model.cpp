#include "sparse_pd/penalty_model.hpp"

#include <doctest.h>

#include <cmath>

using namespace sparse_pd;

namespace {
PenaltyModel model2(Vector z, Vector g, Vector H, double rho) { return PenaltyModel{z, g, H, rho}; }
Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }
}  // namespace

TEST_SUITE("penalty_model") {
  TEST_CASE("model value") {
    const PenaltyModel M = model2(v2(1, -1), v2(3, 4), v2(2, 5), 2.0);
    CHECK(model_value(M, M.z, M.z) == 0.0);
    CHECK(model_value(M, M.z, M.z + v2(1, 0)) == doctest::Approx(1.0));
    const PenaltyModel N = model2(v2(0, 0), v2(1, 0), v2(2, 2), 1.0);
    CHECK(model_value(N, v2(1, 1), v2(0, 0)) == doctest::Approx(4.0));
  }

  TEST_CASE("model gradient") {
    const PenaltyModel M = model2(v2(1, -1), v2(3, 4), v2(2, 5), 2.0);
    CHECK(model_grad_x(M, M.z, M.z) == M.g_z);
    const Vector y = v2(0.3, 0.7);
    CHECK(model_grad_x(M, solve_x(M, y), y).cwiseAbs().maxCoeff() <= 1e-12 * (1 + M.g_z.cwiseAbs().maxCoeff()));
  }

  TEST_CASE("closed-form x") {
    const PenaltyModel M = model2(v2(0, 0), v2(1, -1), v2(2, 2), 1.0);
    const Vector x = solve_x(M, v2(1, 0));
    CHECK(x[0] == doctest::Approx(0.0));
    CHECK(x[1] == doctest::Approx(1.0 / 3.0));

    const PenaltyModel Z = model2(v2(2, -3), v2(0, 0), v2(1, 4), 0.5);
    CHECK((solve_x(Z, Z.z) - Z.z).norm() == 0.0);

    const PenaltyModel R = model2(v2(2, -3), v2(1, 1), v2(1, 4), 1e8);
    const Vector y = v2(0.25, 5);
    CHECK((solve_x(R, y) - y).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK(model_min_value(M, v2(1, 0)) == doctest::Approx(model_value(M, x, v2(1, 0))));
  }

  TEST_CASE("lipschitz estimate") {
    const Vector y = v2(1, 0);
    CHECK(update_lipschitz(1, 2, 1, y, 2.2e-16) == doctest::Approx(1000.0));
    CHECK(update_lipschitz(7, 1, 1, y, 2.2e-16) == 7.0);
    // h capped at 0.9
    CHECK(update_lipschitz(0, 1.9, 1, v2(1e14, 0), 2.2e-16) == doctest::Approx(1.0));
  }
}
