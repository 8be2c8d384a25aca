#include "sparse_pd/pdqn.hpp"

#include "sparse_pd/baselines.hpp"
#include "sparse_pd/linesearch.hpp"
#include "sparse_pd/sets.hpp"
#include "sparse_pd/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sparse_pd {

namespace {

constexpr int kSettledOuterIters = 5;
constexpr double kStagnationStep = 1e-10;
constexpr double kRecoveryTol = 1e-3;

Vector project_on(const Vector& v, const SetDescriptor& set, const SupportSet& support) {
  return embed(project_convex_restricted(restrict_to(v, support), set, support), support);
}

}  // namespace

double next_rho(double rho_prev, const SolverConfig& cfg) {
  return std::max(cfg.rho_min, std::min(cfg.r * rho_prev, cfg.rho_max));
}

InnerResult inner_loop(const PenaltyModel& M, const Vector& x_start, const Vector& y_start, Index s,
                       const SetDescriptor& set, double eps, const SolverConfig& cfg,
                       const PdqnHooks* hooks, std::int64_t j) {
  const Symmetry sym = set.symmetry();
  auto report = [&](const Vector& x, const Vector& y) {
    if (hooks && hooks->on_model_value) hooks->on_model_value(j, model_value(M, x, y));
  };

  InnerResult out{x_start, y_start, 0, false};
  Vector& x = out.x;
  Vector& y = out.y;
  report(x, y);
  for (int it = 1; it <= kInnerIterationCap; ++it) {
    out.iterations = it;
    const Vector x_star = solve_x(M, y);
    const LineSearchResult ls = line_search(M, x, y, x_star, cfg.varrho, cfg.line_search);
    if (!ls.stagnation)
      x = ls.x;
    else if (model_value(M, x_star, y) <= model_value(M, x, y))
      x = x_star;
    report(x, y);

    // Super-support from the model gradient at the sparse iterate.
    const Vector score = model_grad_x(M, y, y);
    const SupportSet chosen = select_super_support(y, score, s, sym);
    Vector y_new = project_on(x, set, chosen);
    double dist = (x - y_new).squaredNorm();
    const SupportSet active = SupportSet::of_nonzeros(y);
    if (active.size() == s && !(chosen == active)) {
      Vector y_keep = project_on(x, set, active);
      const double dist_keep = (x - y_keep).squaredNorm();
      if (dist_keep <= dist) {
        y_new = std::move(y_keep);
        dist = dist_keep;
      }
    }
    if (dist <= (x - y).squaredNorm()) y = std::move(y_new);
    report(x, y);

    if (model_grad_x(M, x, y).norm() <= eps) return out;
  }
  out.stagnation = true;
  return out;
}

OuterDecision outer_step(double Upsilon_prev, double Delta_prev, double eta,
                         const PenaltyModel& M_next, double f_x, const Vector& x, const Vector& y,
                         const Vector& y00, const SolverConfig& cfg) {
  OuterDecision out;
  out.rho = M_next.rho;
  const bool upsilon_breach = f_x + model_min_value(M_next, y) > Upsilon_prev;
  const bool disagreement = (x - y).norm() > cfg.tau * Delta_prev + eta;
  out.restart = upsilon_breach || disagreement;
  const Vector& y0 = out.restart ? y00 : y;
  out.Upsilon = std::max({Upsilon_prev, f_x, f_x + model_min_value(M_next, y0)});
  return out;
}

RunRecord solve(const ProblemInstance& problem, const SolverConfig& cfg, const PdqnHooks* hooks) {
  return run_with_budget(problem, cfg, "pdqn", [&](CountedObjective& obj, RunMonitor& mon) {
    const SetDescriptor& set = problem.set;
    const Index s = problem.s;

    const EvaluatedPoint start = evaluate(obj, mon, sparse_project(problem.x0, set, s));
    if (mon.done()) return Termination::Converged;
    FistaResult warm = bfs_refine(obj, mon, start, 1.0, cfg.bfs_max_iter, cfg.fista_max_iter);
    if (mon.done()) return Termination::Converged;
    double L = warm.L;

    EvaluatedPoint px = warm.point;  // primal iterate x with f, g
    EvaluatedPoint py = warm.point;  // sparse iterate y with f, g
    Vector y00 = py.x;
    Vector y0 = y00;

    SolverState st;
    st.x = px.x;
    st.y = py.x;
    st.d = initial_diagonal(problem.n, cfg);
    st.rho = cfg.rho0;
    st.mem = CurvatureMemory(cfg.memory);
    st.Upsilon = std::max({px.f, px.f + model_min_value(PenaltyModel{px.x, px.g, st.d, st.rho}, y0), cfg.c_hat});
    st.Delta = 0.0;

    std::set<std::vector<Index>> visited{SupportSet::of_nonzeros(py.x).indices};
    SupportSet last_support = SupportSet::of_nonzeros(py.x);
    int settled = 0;

    for (st.j = 1;; ++st.j) {
      const Tolerances tol = tolerance_schedule(st.j, cfg.eps_min);
      st.eps_j = tol.eps;
      st.eta_j = tol.eta;

      const PenaltyModel M{px.x, px.g, st.d, st.rho};
      InnerResult in = inner_loop(M, px.x, y0, s, set, st.eps_j, cfg, hooks, st.j);
      if (in.stagnation) return Termination::Stagnation;

      const Vector y_old = py.x;
      EvaluatedPoint pxn;
      pxn.x = in.x;
      if (in.y != py.x) {
        py.x = in.y;
        py.f = obj.value(py.x);
        py.g = obj.gradient(py.x);
        if (mon.observe(py.x, py.f, py.g)) return Termination::Converged;
      }
      if (pxn.x == py.x) {
        pxn.f = py.f;
        pxn.g = py.g;
      } else {
        pxn.f = obj.value(pxn.x);
        pxn.g = obj.gradient(pxn.x);
      }

      st.mem = update_memory(std::move(st.mem), pxn.x, px.x, pxn.g, px.g, cfg.varrho);
      st.d = diag_update(cfg.hessian, st.mem, st.d, cfg);

      const PenaltyModel M_next{pxn.x, pxn.g, st.d, next_rho(st.rho, cfg)};
      const OuterDecision dec =
          outer_step(st.Upsilon, st.Delta, st.eta_j, M_next, pxn.f, pxn.x, py.x, y00, cfg);
      st.rho = dec.rho;
      st.restarted = dec.restart;
      st.Upsilon = dec.Upsilon;
      st.Delta = (pxn.x - py.x).norm();
      y0 = dec.restart ? y00 : py.x;
      px = std::move(pxn);
      st.x = px.x;
      st.y = py.x;
      st.counters = obj.counter();
      if (hooks && hooks->on_outer) hooks->on_outer(st);

      const SupportSet support = SupportSet::of_nonzeros(py.x);
      settled = support == last_support ? settled + 1 : 0;
      last_support = support;
      const bool stagnant = (py.x - y_old).norm() < kStagnationStep;
      if (settled < kSettledOuterIters && !stagnant) continue;

      // The support has settled: solve on it, and try support moves when it repeats.
      const double f_before = py.f;
      FistaResult polish = fista_restricted(obj, mon, py, stationarity_support(py.x, py.g, set, s), L,
                                            cfg.fista_max_iter, 1e-9);
      L = polish.L;
      if (mon.done()) return Termination::Converged;
      EvaluatedPoint best = std::move(polish.point);
      const bool seen = !visited.insert(SupportSet::of_nonzeros(best.x).indices).second;
      const bool polish_unfinished =
          polish.iterations >= cfg.fista_max_iter && best.f < f_before - 1e-12 * (1.0 + std::abs(f_before));
      if ((seen || stagnant) && !polish_unfinished) {
        FistaResult rec = pss_recovery(obj, mon, best, L, cfg.pss_max_iter, kRecoveryTol);
        L = rec.L;
        if (mon.done()) return Termination::Converged;
        if (!(rec.point.f < best.f - 1e-12 * (1.0 + std::abs(best.f)))) return Termination::Stagnation;
        best = std::move(rec.point);
        visited.insert(SupportSet::of_nonzeros(best.x).indices);
      }

      px = best;
      py = best;
      y00 = best.x;
      y0 = y00;
      st.x = st.y = best.x;
      st.Delta = 0.0;
      settled = 0;
      last_support = SupportSet::of_nonzeros(best.x);
    }
  });
}

}  // namespace sparse_pd
