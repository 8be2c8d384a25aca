#include "sparse_pd/baselines.hpp"

#include "sparse_pd/penalty_model.hpp"
#include "sparse_pd/stationarity.hpp"

#include <algorithm>
#include <cmath>

namespace sparse_pd {

namespace {

constexpr int kMaxBacktracks = 5;
constexpr int kRecoveryFistaIter = 25;

bool strictly_below(double f_new, double f_old) {
  return f_new < f_old - 1e-12 * (1.0 + std::abs(f_old));
}

Vector project_on(const Vector& v, const SetDescriptor& set, const SupportSet& support) {
  return embed(project_convex_restricted(restrict_to(v, support), set, support), support);
}

double entering_score(double g, SetKind kind, Symmetry sym) {
  if (kind == SetKind::UnitSum || sym == Symmetry::Type2) return std::abs(g);
  return std::max(0.0, -g);
}

bool is_pss_move(const Move& m, Index weakest) { return m.out < 0 || m.out == weakest; }

}  // namespace

EvaluatedPoint evaluate(CountedObjective& obj, RunMonitor& mon, const Vector& x) {
  EvaluatedPoint p;
  p.x = x;
  p.f = obj.value(x);
  p.g = obj.gradient(x);
  mon.observe(p.x, p.f, p.g);
  return p;
}

FistaResult fista_restricted(CountedObjective& obj, RunMonitor& mon, const EvaluatedPoint& start,
                             const SupportSet& support, double L0, int max_iter, double tol) {
  const SetDescriptor& set = obj.problem().set;
  FistaResult out;
  out.L = std::max(0.5 * L0, 1e-12);
  if (support.empty()) {
    out.point = start;
    return out;
  }

  EvaluatedPoint x = start;
  const Vector px = project_on(start.x, set, support);
  if ((px - start.x).cwiseAbs().maxCoeff() > 0.0) x = evaluate(obj, mon, px);
  double& L = out.L;
  if (L * (x.x - project_on(x.x - x.g / L, set, support)).cwiseAbs().maxCoeff() <= tol) {
    out.point = x;
    return out;
  }

  bool gx_valid = true;
  Vector v = x.x;
  double fv = x.f;
  Vector gv = x.g;
  bool v_is_x = true;
  double t = 1.0;

  for (int it = 0; it < max_iter; ++it) {
    Vector xn;
    double fn = 0.0;
    for (int bt = 0;; ++bt) {
      xn = project_on(v - gv / L, set, support);
      fn = obj.value(xn);
      const Vector dd = xn - v;
      const double bound = fv + gv.dot(dd) + 0.5 * L * dd.squaredNorm();
      if (fn <= bound + 1e-12 * (1.0 + std::abs(fv)) || bt == kMaxBacktracks) break;
      L *= 2.0;
    }
    ++out.iterations;
    const double mapping = L * (xn - v).cwiseAbs().maxCoeff();

    if (!(fn < x.f)) {
      if (v_is_x) break;
      // Momentum overshoot: restart from the last accepted point.
      if (!gx_valid) {
        x.g = obj.gradient(x.x);
        gx_valid = true;
        if (mon.observe(x.x, x.f, x.g)) break;
      }
      v = x.x;
      fv = x.f;
      gv = x.g;
      v_is_x = true;
      t = 1.0;
      continue;
    }

    mon.observe_value(xn, fn);
    const Vector x_prev = x.x;
    x.x = xn;
    x.f = fn;
    gx_valid = false;
    if (mapping <= tol) break;

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / t_next;
    t = t_next;
    if (beta == 0.0) {
      x.g = obj.gradient(x.x);
      gx_valid = true;
      if (mon.observe(x.x, x.f, x.g)) break;
      v = x.x;
      fv = x.f;
      gv = x.g;
      v_is_x = true;
    } else {
      v = xn + beta * (xn - x_prev);
      fv = obj.value(v);
      gv = obj.gradient(v);
      v_is_x = false;
    }
  }

  if (!gx_valid) {
    x.g = obj.gradient(x.x);
    mon.observe(x.x, x.f, x.g);
  }
  out.point = std::move(x);
  return out;
}

std::vector<Move> rank_moves(const EvaluatedPoint& p, const SetDescriptor& set, Index s, double Lc) {
  const SupportSet active = SupportSet::of_nonzeros(p.x);
  const SupportSet inactive = active.complement();
  const Symmetry sym = set.symmetry();
  double shift = 0.0;
  if ((set.kind() == SetKind::Simplex || set.kind() == SetKind::UnitSum) && !active.empty()) {
    for (Index i : active.indices) shift += p.g[i];
    shift /= static_cast<double>(active.size());
  }

  std::vector<Move> moves;
  std::vector<double> gain(inactive.indices.size());
  for (std::size_t k = 0; k < inactive.indices.size(); ++k) {
    const double e = entering_score(p.g[inactive.indices[k]] - shift, set.kind(), sym);
    gain[k] = e * e / (2.0 * Lc);
  }
  if (active.size() < s)
    for (std::size_t k = 0; k < inactive.indices.size(); ++k) moves.push_back({-1, inactive.indices[k], gain[k]});
  for (Index i : active.indices) {
    const double xi = p.x[i];
    const double loss = 0.5 * Lc * xi * xi - (p.g[i] - shift) * xi;
    for (std::size_t k = 0; k < inactive.indices.size(); ++k)
      moves.push_back({i, inactive.indices[k], gain[k] - loss});
  }
  std::stable_sort(moves.begin(), moves.end(),
                   [](const Move& a, const Move& b) { return a.predicted > b.predicted; });
  return moves;
}

std::optional<EvaluatedPoint> try_move(CountedObjective& obj, RunMonitor& mon, const EvaluatedPoint& p,
                                       const Move& move, double& L, int fista_iter) {
  const SetDescriptor& set = obj.problem().set;
  std::vector<Index> idx = SupportSet::of_nonzeros(p.x).indices;
  if (move.out >= 0) idx.erase(std::remove(idx.begin(), idx.end(), move.out), idx.end());
  idx.push_back(move.in);
  const SupportSet support(std::move(idx), p.x.size());

  Vector x = p.x;
  if (move.out >= 0) x[move.out] = 0.0;
  const EvaluatedPoint start = evaluate(obj, mon, project_on(x, set, support));
  FistaResult r = fista_restricted(obj, mon, start, support, L, fista_iter, 0.0);
  if (!strictly_below(r.point.f, p.f)) return std::nullopt;
  L = r.L;
  return std::move(r.point);
}

std::optional<EvaluatedPoint> move_sweep(CountedObjective& obj, RunMonitor& mon,
                                         const EvaluatedPoint& p, MoveRule rule, double& L,
                                         int max_tries, int fista_iter) {
  const ProblemInstance& problem = obj.problem();
  std::vector<Move> moves = rank_moves(p, problem.set, problem.s, L);
  if (rule == MoveRule::FirstImproving) {
    Index weakest = -1;
    for (Index i : SupportSet::of_nonzeros(p.x).indices)
      if (weakest < 0 || std::abs(p.x[i]) < std::abs(p.x[weakest])) weakest = i;
    std::erase_if(moves, [&](const Move& m) { return !is_pss_move(m, weakest); });
  }

  std::optional<EvaluatedPoint> best;
  const auto tries = std::min<std::size_t>(moves.size(), static_cast<std::size_t>(max_tries));
  for (std::size_t k = 0; k < tries; ++k) {
    double L_try = L;
    auto q = try_move(obj, mon, p, moves[k], L_try, fista_iter);
    if (!q) continue;
    if (!best || q->f < best->f) {
      best = std::move(q);
      L = L_try;
    }
    if (rule == MoveRule::FirstImproving || mon.done()) break;
  }
  return best;
}

FistaResult bfs_refine(CountedObjective& obj, RunMonitor& mon, const EvaluatedPoint& start, double L0,
                       int max_iter, int fista_iter, double bf_tol) {
  const ProblemInstance& problem = obj.problem();
  FistaResult out{start, L0, 0};
  for (int it = 0; it < max_iter; ++it) {
    const double f_old = out.point.f;
    const SupportSet support = stationarity_support(out.point.x, out.point.g, problem.set, problem.s);
    FistaResult r = fista_restricted(obj, mon, out.point, support, out.L, fista_iter, 0.1 * bf_tol);
    out.point = std::move(r.point);
    out.L = r.L;
    out.iterations += r.iterations;
    if (mon.done()) break;
    if (check_BF(out.point.x, out.point.g, problem.set, problem.s, out.L, bf_tol)) break;
    if (std::abs(out.point.f - f_old) < 1e-20 * (1.0 + std::abs(f_old))) break;
  }
  return out;
}

FistaResult pss_recovery(CountedObjective& obj, RunMonitor& mon, const EvaluatedPoint& start, double L0,
                         int max_iter, double tol) {
  const ProblemInstance& problem = obj.problem();
  FistaResult out{start, L0, 0};
  for (int it = 0; it < max_iter; ++it) {
    auto q = move_sweep(obj, mon, out.point, MoveRule::FirstImproving, out.L, 10, kRecoveryFistaIter);
    if (!q && !mon.done()) q = move_sweep(obj, mon, out.point, MoveRule::BestImproving, out.L, 10, kRecoveryFistaIter);
    if (!q) break;
    const double f_old = out.point.f;
    const SupportSet support = stationarity_support(q->x, q->g, problem.set, problem.s);
    FistaResult r = fista_restricted(obj, mon, *q, support, out.L, kRecoveryFistaIter, 0.0);
    out.point = std::move(r.point);
    out.L = r.L;
    ++out.iterations;
    if (mon.done() || (f_old - out.point.f) < tol * (1.0 + std::abs(f_old))) break;
  }
  return out;
}

RunRecord run_with_budget(const ProblemInstance& problem, const SolverConfig& cfg, std::string name,
                          const std::function<Termination(CountedObjective&, RunMonitor&)>& body) {
  cfg.validate();
  problem.validate();
  CountedObjective obj(problem, cfg.nf2g_max, cfg.sec_max);
  RunMonitor mon(obj, cfg.eps);
  Termination term = Termination::Failed;
  try {
    term = body(obj, mon);
  } catch (const BudgetExhausted&) {
    term = mon.done() ? Termination::Converged : Termination::Budget;
  }
  return mon.finish(std::move(name), term);
}

namespace {

/// Polish / move loop shared by PSS and GSS.
Termination support_move_loop(CountedObjective& obj, RunMonitor& mon, const SolverConfig& cfg,
                              MoveRule rule) {
  const ProblemInstance& problem = obj.problem();
  EvaluatedPoint p = evaluate(obj, mon, sparse_project(problem.x0, problem.set, problem.s));
  double L = 1.0;
  for (;;) {
    if (mon.done()) return Termination::Converged;
    const double f_before = p.f;
    const SupportSet support = stationarity_support(p.x, p.g, problem.set, problem.s);
    FistaResult r = fista_restricted(obj, mon, p, support, L, cfg.fista_max_iter, 1e-9);
    p = std::move(r.point);
    L = r.L;
    if (mon.done()) return Termination::Converged;
    if (r.iterations >= cfg.fista_max_iter && strictly_below(p.f, f_before)) continue;
    auto q = move_sweep(obj, mon, p, rule, L);
    if (!q) return Termination::Stagnation;
    p = std::move(*q);
  }
}

}  // namespace

RunRecord iht(const ProblemInstance& problem, const SolverConfig& cfg) {
  return run_with_budget(problem, cfg, "iht", [&](CountedObjective& obj, RunMonitor& mon) {
    const SetDescriptor& set = problem.set;
    EvaluatedPoint p = evaluate(obj, mon, sparse_project(problem.x0, set, problem.s));
    double L = 1.0;
    int flat = 0;
    for (;;) {
      if (mon.done()) return Termination::Converged;
      const Vector xn = sparse_project(p.x - p.g / L, set, problem.s);
      if ((xn - p.x).cwiseAbs().maxCoeff() == 0.0) return Termination::Stagnation;
      const double fn = obj.value(xn);
      if (!(fn <= p.f)) {
        const double L_new = update_lipschitz(L, fn, p.f, xn);
        L = L_new > L ? L_new : 2.0 * L;
        if (L > 1e30) return Termination::Stagnation;
        continue;
      }
      L = update_lipschitz(L, fn, p.f, xn);
      flat = (p.f - fn) <= 1e-15 * (1.0 + std::abs(p.f)) ? flat + 1 : 0;
      p.x = xn;
      p.f = fn;
      p.g = obj.gradient(xn);
      mon.observe(p.x, p.f, p.g);
      if (flat >= 50) return mon.done() ? Termination::Converged : Termination::Stagnation;
    }
  });
}

RunRecord pss(const ProblemInstance& problem, const SolverConfig& cfg) {
  return run_with_budget(problem, cfg, "pss", [&](CountedObjective& obj, RunMonitor& mon) {
    return support_move_loop(obj, mon, cfg, MoveRule::FirstImproving);
  });
}

RunRecord gss(const ProblemInstance& problem, const SolverConfig& cfg) {
  return run_with_budget(problem, cfg, "gss", [&](CountedObjective& obj, RunMonitor& mon) {
    return support_move_loop(obj, mon, cfg, MoveRule::BestImproving);
  });
}

RunRecord zcws(const ProblemInstance& problem, const SolverConfig& cfg) {
  return run_with_budget(problem, cfg, "zcws", [&](CountedObjective& obj, RunMonitor& mon) {
    EvaluatedPoint p = evaluate(obj, mon, sparse_project(problem.x0, problem.set, problem.s));
    double L = 1.0;
    for (;;) {
      FistaResult r = bfs_refine(obj, mon, p, L, cfg.bfs_max_iter, cfg.fista_max_iter);
      p = std::move(r.point);
      L = r.L;
      if (mon.done()) return Termination::Converged;
      // Zero-coordinate swaps: every support member is offered the best entering coordinate.
      std::vector<Move> ranked = rank_moves(p, problem.set, problem.s, L);
      std::vector<Move> per_out;
      for (const Move& m : ranked) {
        const bool seen = std::any_of(per_out.begin(), per_out.end(), [&](const Move& q) { return q.out == m.out; });
        if (!seen) per_out.push_back(m);
      }
      std::optional<EvaluatedPoint> best;
      const auto tries = std::min<std::size_t>(per_out.size(), 10);
      for (std::size_t k = 0; k < tries; ++k) {
        double L_try = L;
        auto q = try_move(obj, mon, p, per_out[k], L_try);
        if (q && (!best || q->f < best->f)) {
          best = std::move(q);
          L = L_try;
        }
      }
      if (!best) return Termination::Stagnation;
      p = std::move(*best);
    }
  });
}

BfsOutcome bfs_search(const ProblemInstance& problem, const SolverConfig& cfg) {
  Vector y;
  RunRecord rec = run_with_budget(problem, cfg, "bfs", [&](CountedObjective& obj, RunMonitor& mon) {
    EvaluatedPoint p = evaluate(obj, mon, sparse_project(problem.x0, problem.set, problem.s));
    y = p.x;
    FistaResult r = bfs_refine(obj, mon, p, 1.0, cfg.bfs_max_iter, 100000, 1e-6);
    y = r.point.x;
    return mon.done() ? Termination::Converged : Termination::Stagnation;
  });
  if (y.size() == 0 || rec.termination == Termination::Budget) y = rec.x_best;
  return {std::move(y), std::move(rec)};
}

}  // namespace sparse_pd
