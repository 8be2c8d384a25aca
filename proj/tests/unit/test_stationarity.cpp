#include "sparse_pd/stationarity.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace sparse_pd;

namespace {
Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Index>(v.size()));
  Index i = 0;
  for (double e : v) x[i++] = e;
  return x;
}
}  // namespace

TEST_SUITE("stationarity") {
  TEST_CASE("q_sol") {
    CHECK(q_sol(1, 1, 3) == 0.0);
    CHECK(q_sol(3, 1, 3) == 1.0);
    CHECK(q_sol(2, 1, 3) == doctest::Approx(0.5));
    CHECK(q_sol(2, 1, 1) == kInf);
    CHECK(q_sol(1, 1, 1) == 0.0);
  }

  TEST_CASE("rg_S") {
    const SetDescriptor full = SetDescriptor::full_space();
    CHECK(rg_S(vec({1, 0}), vec({-3, 2}), SetDescriptor::lp_ball(2, 1), 1) == 0.0);
    // on the full space a zero support gradient leaves the swap term
    CHECK(rg_S(vec({1, 0, 0}), vec({0, 0.5, 0.1}), full, 1) == doctest::Approx(0.5));
    CHECK(rg_S(vec({1, 0, 2}), vec({0, 0, 0}), full, 2) == 0.0);
    // type-2 swap violation |5| - |-3| = 2; the support coordinate sits on the ball boundary
    CHECK(rg_S(vec({1, 0}), vec({-3, 5}), SetDescriptor::lp_ball(2, 1), 1) == doctest::Approx(2.0));
    // ||x||_0 < s on the full space: gradient norm on the top-s set
    CHECK(rg_S(vec({1, 0, 0}), vec({0.2, -0.7, 0.3}), full, 2) == doctest::Approx(0.7));
    CHECK_THROWS_AS(rg_S(vec({1, 1, 0}), vec({0, 0, 0}), full, 1), std::invalid_argument);
    CHECK_THROWS_AS(rg_S(vec({0.5, 0.6}), vec({0, 0}), SetDescriptor::simplex(), 2), std::invalid_argument);
  }

  TEST_CASE("rg_S vanishes exactly on brute-force CC-S points") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-1, 1);
    int agree = 0;
    for (int k = 0; k < 300; ++k) {
      const SetDescriptor set = k % 2 ? SetDescriptor::nonneg_orthant() : SetDescriptor::full_space();
      Vector x = Vector::Zero(5);
      Vector g(5);
      for (Index i = 0; i < 5; ++i) g[i] = std::round(2 * u(gen)) / 2;
      for (Index i = 0; i < 1 + k % 2; ++i) {
        x[(k + 2 * i) % 5] = 1 + std::abs(u(gen));
        if (k % 3 == 0) g[(k + 2 * i) % 5] = 0;
      }
      const bool ccs = oracle::brute_force_ccs(x, g, set, 2, 1e-12);
      agree += ccs == (rg_S(x, g, set, 2) <= 1e-12);
    }
    CHECK(agree == 300);
  }

  TEST_CASE("check_BF") {
    const SetDescriptor full = SetDescriptor::full_space();
    CHECK(check_BF(vec({1, 2, 3}), vec({0, 0, 0}), full, 3));
    CHECK_FALSE(check_BF(vec({1, 0, 0}), vec({0.3, 0, 0}), full, 2));
    CHECK(check_BF(vec({1, 0, 0}), vec({0, 0.3, 0}), full, 1));
    CHECK_FALSE(check_BF(vec({1, 1, 0}), vec({0, 0, 0}), full, 1));
  }

  TEST_CASE("check_BF at enumerated global minimizers") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 20; ++k) {
      const Index n = 3 + k % 4;
      Vector diag(n), c(n);
      for (Index i = 0; i < n; ++i) {
        diag[i] = 0.5 + std::abs(nd(gen));
        c[i] = nd(gen);
      }
      const Matrix Q = diag.asDiagonal();
      const auto opt = oracle::enumerate_quadratic(Q, c, 2);
      CHECK(check_BF(opt.x, Q * opt.x + c, SetDescriptor::full_space(), 2));
    }
  }

  TEST_CASE("check_lu_zhang") {
    CHECK(check_lu_zhang(vec({0, 0, 0}), vec({0, 1, 0}), 2));
    CHECK(check_lu_zhang(vec({2, 0}), vec({0, 5}), 1));
    CHECK_FALSE(check_lu_zhang(vec({2, 0}), vec({1, 0}), 1));
    CHECK_FALSE(check_lu_zhang(vec({2, 1}), vec({0, 0}), 1));
  }

  TEST_CASE("check_L_stationarity") {
    const SetDescriptor full = SetDescriptor::full_space();
    CHECK(check_L_stationarity(vec({1, 0, 0}), vec({0, 0, 0}), full, 1, 1.0));
    CHECK_FALSE(check_L_stationarity(vec({1, 0, 0}), vec({0, -100, 0}), full, 1, 1.0));

    std::mt19937_64 gen(21);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 60; ++k) {
      const Index n = 4 + k % 5;
      const SetDescriptor set = k % 2 ? SetDescriptor::simplex() : SetDescriptor::full_space();
      Vector w(n), g(n);
      for (Index i = 0; i < n; ++i) {
        w[i] = nd(gen);
        g[i] = nd(gen);
      }
      const Vector x = oracle::oracle_sparse_project(w, set, 2);
      const Vector grad = k % 3 == 0 ? Vector((x - w).eval()) : g;
      const Vector fixed = oracle::oracle_sparse_project(x - grad, set, 2);
      const bool oracle_says = grad.squaredNorm() <= (fixed - (x - grad)).squaredNorm() + 1e-8;
      CHECK(check_L_stationarity(x, grad, set, 2, 1.0) == oracle_says);
    }
  }

  TEST_CASE("classify_solved") {
    RunRecord r;
    r.q = 1e-7;
    r.nf2g = 100;
    r.wall_seconds = 0;
    CHECK(classify_solved(r, 1e-6, 20000, kInf, Criterion::Objective));
    r.nf2g = 20001;
    CHECK_FALSE(classify_solved(r, 1e-6, 20000, kInf, Criterion::Objective));
    r.nf2g = 10;
    r.rgS_best = 5e-4;
    CHECK(classify_solved(r, 1e-3, 20000, kInf, Criterion::Strong));
    CHECK_FALSE(classify_solved(r, 1e-6, 20000, kInf, Criterion::Strong));
  }
}
