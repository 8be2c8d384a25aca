// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "sparse_pd/baselines.hpp"
#include "sparse_pd/bench.hpp"
#include "sparse_pd/pdqn.hpp"
#include "sparse_pd/stationarity.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <cstdlib>
#include <string>

using namespace sparse_pd;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

ProblemInstance quadratic_instance(const Matrix& Q, const Vector& c, Index s, SetDescriptor set, std::string id) {
  auto data = std::make_shared<std::pair<Matrix, Vector>>(Q, c);
  ProblemInstance p;
  p.id = std::move(id);
  p.n = c.size();
  p.m = c.size();
  p.s = s;
  p.set = set;
  p.f = [data](const Vector& x) { return 0.5 * x.dot(data->first * x) + data->second.dot(x); };
  p.g = [data](const Vector& x) -> Vector { return data->first * x + data->second; };
  p.data = data;
  p.x0 = sparse_project(Vector::Ones(p.n), set, s);
  return p;
}

Matrix random_spd(Index n, Rng& rng, double shift) {
  const Matrix B = rng.normal_matrix(n, n);
  Matrix Q = B.transpose() * B / static_cast<double>(n);
  Q.diagonal().array() += shift;
  return Q;
}

// 1 -------------------------------------------------------------------------
Outcome projection_oracle() {
  Rng rng(101);
  const std::vector<std::pair<std::string, std::function<SetDescriptor(int)>>> kinds{
      {"full", [](int) { return SetDescriptor::full_space(); }},
      {"orthant", [](int) { return SetDescriptor::nonneg_orthant(); }},
      {"simplex", [](int) { return SetDescriptor::simplex(); }},
      {"unitsum", [](int) { return SetDescriptor::unit_sum(); }},
      {"lpball",
       [](int k) {
         const double ps[] = {1.0, 1.5, 2.0, 3.0, kInf};
         return SetDescriptor::lp_ball(ps[k % 5], 1.0 + 0.5 * (k % 3));
       }},
      {"box", [](int k) { return k % 2 ? SetDescriptor::box(-1.0, 1.0) : SetDescriptor::box(-0.5, 2.0); }},
  };
  double worst = 0.0;
  int bad = 0;
  for (const auto& [name, make] : kinds) {
    for (int k = 0; k < 500; ++k) {
      const SetDescriptor set = make(k);
      const Index n = rng.uniform_int(4, 8);
      const Index s = rng.uniform_int(1, 3);
      const Vector x = 2.0 * rng.normal_vector(n);
      const Vector z = sparse_project(x, set, s);
      const Vector zo = oracle::oracle_sparse_project(x, set, s);
      const double gap = std::abs((z - x).squaredNorm() - (zo - x).squaredNorm());
      worst = std::max(worst, gap);
      const bool feasible = SupportSet::of_nonzeros(z).size() <= s && set.contains(z);
      if (gap > 1e-10 || !feasible) ++bad;
    }
  }
  return {bad == 0, fmt("3000 draws, %.0f mismatches, worst |d - d_oracle| = %.2e", bad, worst)};
}

// 2 -------------------------------------------------------------------------
Outcome gradient_checks() {
  Rng rng(202);
  double worst = 0.0;
  for (Family family : benchmark_families()) {
    const ProblemInstance p = generate_instance(1000 + static_cast<std::uint64_t>(family), family, 40, 10);
    for (int k = 0; k < 10; ++k) {
      const Vector x = sparse_project(rng.normal_vector(p.n), p.set, p.s);
      const Vector g = p.g(x);
      const Vector fd = oracle::finite_difference_gradient(p.f, x);
      worst = std::max(worst, (g - fd).cwiseAbs().maxCoeff() / std::max(g.cwiseAbs().maxCoeff(), 1e-12));
    }
  }
  return {worst <= 1e-6, fmt("8 families x 10 points, worst relative error %.2e", worst)};
}

// 3 -------------------------------------------------------------------------
Outcome closed_form() {
  Rng rng(303);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Index n = rng.uniform_int(1, 50);
    PenaltyModel M;
    M.z = rng.normal_vector(n);
    M.g_z = rng.normal_vector(n) * std::pow(10.0, rng.uniform_int(-2, 2));
    M.H.resize(n);
    for (Index i = 0; i < n; ++i) M.H[i] = std::pow(10.0, -4.0 + 8.0 * rng.uniform());
    M.rho = std::pow(10.0, -2.0 + 4.0 * rng.uniform());
    const Vector y = rng.normal_vector(n);
    const double r = model_grad_x(M, solve_x(M, y), y).cwiseAbs().maxCoeff() / (1.0 + M.g_z.cwiseAbs().maxCoeff());
    worst = std::max(worst, r);
  }
  return {worst <= 1e-12, fmt("1000 models, worst scaled residual %.2e", worst)};
}

// 4, 5 ------------------------------------------------------------------------
struct InvariantStats {
  long phi_checks = 0, phi_violations = 0;
  long outer = 0, d_bad = 0, rho_bad = 0, upsilon_bad = 0, y_bad = 0;
};

InvariantStats pdqn_invariants(const std::vector<ProblemInstance>& suite) {
  InvariantStats st;
  SolverConfig cfg;
  for (const auto& p : suite) {
    std::int64_t last_j = -1;
    double last_phi = 0.0;
    double last_upsilon = -kInf;
    PdqnHooks hooks;
    hooks.on_model_value = [&](std::int64_t j, double phi) {
      if (j == last_j) {
        ++st.phi_checks;
        if (phi > last_phi + 1e-12 * (1.0 + std::abs(last_phi))) ++st.phi_violations;
      }
      last_j = j;
      last_phi = phi;
    };
    hooks.on_outer = [&](const SolverState& s) {
      ++st.outer;
      if (s.d.minCoeff() < cfg.lambda_min || s.d.maxCoeff() > cfg.lambda_max) ++st.d_bad;
      if (s.rho < 1e-2 || s.rho > 1e2) ++st.rho_bad;
      if (s.Upsilon < last_upsilon) ++st.upsilon_bad;
      last_upsilon = s.Upsilon;
      if (SupportSet::of_nonzeros(s.y).size() > p.s || !p.set.contains(s.y, 1e-12)) ++st.y_bad;
      last_j = -1;
    };
    solve(p, cfg, &hooks);
  }
  return st;
}

// 6 -------------------------------------------------------------------------
Outcome assumptions() {
  const AssumptionReport r = validate_assumptions(1, 1, 1, 10, 1);
  const double e1 = std::abs(r.theta_bar - 2.0 / 11.0);
  const double e2 = std::abs(r.R_inf - 11.0 / 9.0);
  return {e1 <= 1e-12 && e2 <= 1e-12, fmt("theta_bar=%.15g R_inf=%.15g", r.theta_bar, r.R_inf)};
}

// 7 -------------------------------------------------------------------------
Outcome hierarchy() {
  Rng rng(707);
  int tested = 0, bf_fail = 0, lz_fail = 0, lz_tested = 0, ccs_disagree = 0;
  for (int k = 0; k < 200; ++k) {
    const Index n = rng.uniform_int(3, 8);
    const Index s = rng.uniform_int(1, n - 1);
    const int kind = k % 3;
    const SetDescriptor set =
        kind == 0 ? SetDescriptor::full_space() : kind == 1 ? SetDescriptor::nonneg_orthant() : SetDescriptor::simplex();
    const Matrix Q = random_spd(n, rng, 0.1);
    const Index nnz = std::max<Index>(1, s - rng.uniform_int(0, 1));
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (Index i = 0; i < nnz; ++i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(rng.uniform_int(i, n - 1))]);

    Vector x = Vector::Zero(n);
    Vector g_target = Vector::Zero(n);
    const double lambda = rng.normal();
    for (Index i = 0; i < nnz; ++i) x[perm[static_cast<std::size_t>(i)]] = kind == 0 ? rng.normal() : 0.1 + rng.uniform();
    if (kind == 2) x /= x.sum();
    for (Index i = 0; i < n; ++i) {
      const bool on = x[i] != 0.0;
      if (kind == 1 && !on) g_target[i] = rng.uniform();
      if (kind == 2) g_target[i] = on ? lambda : lambda + rng.uniform();
    }
    const Vector c = g_target - Q * x;
    const ProblemInstance p = quadratic_instance(Q, c, s, set, "h" + std::to_string(k));

    std::vector<Vector> points{x};
    for (int t = 0; t < 3; ++t) points.push_back(sparse_project(x + 1e-3 * rng.normal_vector(n), set, s));
    SolverConfig cfg;
    cfg.nf2g_max = 2000;
    points.push_back(gss(p, cfg).x_best);

    for (const Vector& pt : points) {
      if (pt.size() != n) continue;
      const Vector g = p.g(pt);
      const double r = rg_S(pt, g, set, s);
      if (oracle::brute_force_ccs(pt, g, set, s, 1e-9) != (r <= 1e-9)) ++ccs_disagree;
      if (r > 1e-10) continue;
      ++tested;
      if (!check_BF(pt, g, set, s)) ++bf_fail;
      if (kind == 0) {
        ++lz_tested;
        if (!check_lu_zhang(pt, g, s)) ++lz_fail;
      }
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d CC-S points (%d full space): BF failures %d, check_lu_zhang failures %d; brute-force CC-S disagreements %d",
                tested, lz_tested, bf_fail, lz_fail, ccs_disagree);
  return {tested >= 150 && bf_fail == 0 && lz_fail == 0 && ccs_disagree == 0, buf};
}

// 8 -------------------------------------------------------------------------
Outcome budget_accounting() {
  Rng rng(808);
  int mismatches = 0, overruns = 0;
  const std::vector<std::string> solvers{"pdqn", "iht", "pss", "gss", "bfs", "zcws"};
  for (int k = 0; k < 50; ++k) {
    const Index n = rng.uniform_int(6, 30);
    const Index s = rng.uniform_int(1, n / 2);
    const SetDescriptor set = k % 3 == 0 ? SetDescriptor::full_space()
                              : k % 3 == 1 ? SetDescriptor::simplex()
                                           : SetDescriptor::nonneg_orthant();
    auto calls = std::make_shared<std::pair<std::int64_t, std::int64_t>>(0, 0);
    ProblemInstance p = quadratic_instance(random_spd(n, rng, 1e-2), rng.normal_vector(n), s, set, "mock");
    const auto f = p.f;
    const auto g = p.g;
    p.f = [f, calls](const Vector& x) { ++calls->first; return f(x); };
    p.g = [g, calls](const Vector& x) -> Vector { ++calls->second; return g(x); };
    p.x0 = sparse_project(rng.normal_vector(n), set, s);

    SolverConfig cfg;
    cfg.line_search = true;
    cfg.hessian = static_cast<HessianKind>(k % 4);
    cfg.nf2g_max = k % 2 ? 20000 : 50 + 37 * k;
    const RunRecord rec = solver_by_name(solvers[static_cast<std::size_t>(k) % solvers.size()])(p, cfg);
    if (rec.nf != calls->first || rec.ng != calls->second || rec.nf2g != calls->first + 2 * calls->second)
      ++mismatches;
    if (rec.nf2g > cfg.nf2g_max) ++overruns;
  }
  return {mismatches == 0 && overruns == 0, fmt("50 runs, %.0f counter mismatches, %.0f budget overruns", mismatches, overruns)};
}

// 9 -------------------------------------------------------------------------
Outcome small_optimality() {
  Rng rng(909);
  int hits = 0;
  for (int k = 0; k < 100; ++k) {
    const Index n = rng.uniform_int(3, 6);
    const Index s = rng.uniform_int(1, n - 1);
    const Matrix Q = random_spd(n, rng, 0.1);
    const Vector c = 2.0 * rng.normal_vector(n);
    ProblemInstance p = quadratic_instance(Q, c, s, SetDescriptor::full_space(), "small" + std::to_string(k));
    p.x0 = sparse_project(rng.normal_vector(n), p.set, s);
    SolverConfig cfg;
    cfg.hessian = HessianKind::LM1;
    const RunRecord rec = solve(p, cfg);
    const double f_star = oracle::enumerate_quadratic(Q, c, s).f;
    if (rec.f_best <= f_star + 1e-6) ++hits;
  }
  return {hits >= 95, fmt("%.0f / 100 instances within 1e-6 of the enumerated optimum", hits)};
}

// 10, 11 ----------------------------------------------------------------------
struct SuiteRun {
  std::vector<RunRecord> records;
};

Outcome reproduction(const std::vector<ProblemInstance>& suite) {
  SuiteConfig sc;
  sc.solvers = solver_names();
  sc.solver.eps = 1e-3;
  sc.solver.nf2g_max = 20000;
  const auto records = run_suite(sc, suite);
  int pd_q = 0, pd_s = 0, iht_q = 0, iht_s = 0;
  for (const auto& r : records) {
    if (r.solver == "pdqn") {
      pd_q += r.solved_q3;
      pd_s += r.solved_s3;
    } else if (r.solver == "iht") {
      iht_q += r.solved_q3;
      iht_s += r.solved_s3;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "objective: pdqn %d vs iht %d; strong: pdqn %d vs iht %d (of %zu)", pd_q, iht_q,
                pd_s, iht_s, suite.size());
  return {pd_q >= iht_q && pd_s >= iht_s, buf};
}

Outcome determinism(const std::vector<ProblemInstance>& suite) {
  SuiteConfig sc;
  sc.solvers = solver_names();
  ReportOptions opt;
  opt.timing = false;
  sc.jobs = 1;
  const auto a = run_suite(sc, suite);
  sc.jobs = 2;
  const auto again = generate_suite(42, 30);
  const auto b = run_suite(sc, again);
  const bool same_records = records_csv(a, false) == records_csv(b, false);
  const bool same_profiles = profiles_csv(all_profiles(a, opt)) == profiles_csv(all_profiles(b, opt));
  return {same_records && same_profiles,
          std::string("records.csv ") + (same_records ? "identical" : "DIFFERENT") + ", profiles.csv " +
              (same_profiles ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    if (!only.empty() && !only.count(id)) return;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %-32s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), sec);
    std::fflush(stdout);
    failures += !o.pass;
  };

  report(1, "projection oracle equivalence", projection_oracle);
  report(2, "gradient checks", gradient_checks);
  report(3, "closed-form x optimality", closed_form);

  std::vector<ProblemInstance> suite;
  if (only.empty() || only.count(4) || only.count(5) || only.count(10) || only.count(11)) suite = generate_suite(42, 30);
  InvariantStats inv;
  report(4, "inner-loop monotonicity", [&] {
    inv = pdqn_invariants(suite);
    return Outcome{inv.phi_violations == 0 && inv.phi_checks > 0,
                   fmt("%.0f model values checked, %.0f increases", static_cast<double>(inv.phi_checks),
                       static_cast<double>(inv.phi_violations))};
  });
  report(5, "safeguard invariants", [&] {
    if (inv.outer == 0) inv = pdqn_invariants(suite);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%ld outer steps: d out of range %ld, rho out of range %ld, Upsilon decreases %ld, bad y %ld",
                  inv.outer, inv.d_bad, inv.rho_bad, inv.upsilon_bad, inv.y_bad);
    return Outcome{inv.outer > 0 && inv.d_bad == 0 && inv.rho_bad == 0 && inv.upsilon_bad == 0 && inv.y_bad == 0, buf};
  });
  report(6, "assumption validator", assumptions);
  report(7, "stationarity hierarchy", hierarchy);
  report(8, "budget accounting", budget_accounting);
  report(9, "small-instance optimality", small_optimality);
  report(10, "pdqn vs iht on the suite", [&] { return reproduction(suite); });
  report(11, "benchmark determinism", [&] { return determinism(suite); });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
