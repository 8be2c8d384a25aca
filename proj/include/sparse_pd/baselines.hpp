#pragma once

#include "sparse_pd/problem.hpp"
#include "sparse_pd/record.hpp"
#include "sparse_pd/sets.hpp"

#include <functional>
#include <optional>

namespace sparse_pd {

/// A feasible point together with its (counted) objective value and gradient.
struct EvaluatedPoint {
  Vector x;
  double f = kInf;
  Vector g;
};

/// Evaluates f and g at x (cost 3) and reports the point to the monitor.
EvaluatedPoint evaluate(CountedObjective& obj, RunMonitor& mon, const Vector& x);

struct FistaResult {
  EvaluatedPoint point;
  double L = 1.0;
  int iterations = 0;
};

/// Accelerated projected gradient on the coordinates in `support`, projecting onto C_L.
///
/// Restarts the momentum whenever the objective would increase, so accepted values are
/// nonincreasing. Each iteration backtracks L at most 5 times. Stops after max_iter
/// iterations or once the gradient-mapping norm L ||x+ - v||_inf drops to tol.
FistaResult fista_restricted(CountedObjective& obj, RunMonitor& mon, const EvaluatedPoint& start,
                             const SupportSet& support, double L0, int max_iter, double tol = 1e-9);

/// Coordinate move: `out` leaves the support (or -1 for a pure grow), `in` enters.
struct Move {
  Index out = -1;
  Index in = -1;
  double predicted = 0.0;
};

/// Grow and swap moves ranked by predicted first-order decrease with curvature Lc.
std::vector<Move> rank_moves(const EvaluatedPoint& p, const SetDescriptor& set, Index s, double Lc);

/// Executes a move (zero `out`, restricted projection, fista_iter FISTA iterations on the new
/// support). Returns the new point only on strict decrease.
std::optional<EvaluatedPoint> try_move(CountedObjective& obj, RunMonitor& mon, const EvaluatedPoint& p,
                                       const Move& move, double& L, int fista_iter = 5);

enum class MoveRule { FirstImproving, BestImproving };

/// One sweep of support moves; nullopt when no tried move improves.
std::optional<EvaluatedPoint> move_sweep(CountedObjective& obj, RunMonitor& mon,
                                         const EvaluatedPoint& p, MoveRule rule, double& L,
                                         int max_tries = 10, int fista_iter = 5);

/// Runs restricted FISTA on successive stationarity supports until the point is BF
/// (within bf_tol), f stalls (|f - f_old| < 1e-20 (1 + |f_old|)), or max_iter rounds.
FistaResult bfs_refine(CountedObjective& obj, RunMonitor& mon, const EvaluatedPoint& start, double L0,
                       int max_iter, int fista_iter, double bf_tol = 1e-6);

/// Stagnation recovery: at most max_iter moves, each followed by a polish, stopping once the
/// relative decrease falls below tol. A sweep tries the PSS moves first and falls back to the
/// best of all ranked moves. Returns the best point.
FistaResult pss_recovery(CountedObjective& obj, RunMonitor& mon, const EvaluatedPoint& start, double L0,
                         int max_iter, double tol);

/// Runs body(obj, mon) under the configured budget and packages the monitor's record.
/// Budget exhaustion ends the run with Termination::Budget.
RunRecord run_with_budget(const ProblemInstance& problem, const SolverConfig& cfg, std::string name,
                          const std::function<Termination(CountedObjective&, RunMonitor&)>& body);

RunRecord iht(const ProblemInstance& problem, const SolverConfig& cfg);
RunRecord pss(const ProblemInstance& problem, const SolverConfig& cfg);
RunRecord gss(const ProblemInstance& problem, const SolverConfig& cfg);
RunRecord zcws(const ProblemInstance& problem, const SolverConfig& cfg);

struct BfsOutcome {
  Vector y;
  RunRecord record;
};
BfsOutcome bfs_search(const ProblemInstance& problem, const SolverConfig& cfg);

}  // namespace sparse_pd
