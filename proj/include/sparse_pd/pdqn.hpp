#pragma once

#include "sparse_pd/hessian.hpp"
#include "sparse_pd/penalty_model.hpp"
#include "sparse_pd/problem.hpp"
#include "sparse_pd/record.hpp"

#include <functional>

namespace sparse_pd {

struct SolverState {
  std::int64_t j = 0;
  Vector x;
  Vector y;
  double rho = 0.0;
  Vector d;
  double Upsilon = 0.0;
  double Delta = 0.0;
  double eps_j = 0.0;
  double eta_j = 0.0;
  CurvatureMemory mem;
  EvalCounter counters;
  bool restarted = false;
};

/// Observation points for tests and diagnostics. Both callbacks are optional.
struct PdqnHooks {
  /// Model value after every half-step of every inner loop (outer index, Phi without f(z)).
  std::function<void(std::int64_t, double)> on_model_value;
  /// State after every outer step.
  std::function<void(const SolverState&)> on_outer;
};

struct InnerResult {
  Vector x;
  Vector y;
  int iterations = 0;
  bool stagnation = false;
};

inline constexpr int kInnerIterationCap = 10000;

/// Alternating minimization of the penalty model: closed-form x step (optionally line
/// searched) and a restricted sparse projection for y on a super-support chosen from the
/// model gradient at the sparse iterate. Stops when ||grad_x Phi(x, y)|| <= eps.
InnerResult inner_loop(const PenaltyModel& M, const Vector& x_start, const Vector& y_start, Index s,
                       const SetDescriptor& set, double eps, const SolverConfig& cfg,
                       const PdqnHooks* hooks = nullptr, std::int64_t j = 0);

/// Outcome of the safeguard tests at the end of an outer iteration.
struct OuterDecision {
  double rho = 0.0;
  bool restart = false;
  double Upsilon = 0.0;
};

/// Penalty update, Upsilon / agreement safeguards and the Upsilon bookkeeping.
/// M_next is the model at the new expansion point x_j with penalty rho_j; f_x = f(x_j).
OuterDecision outer_step(double Upsilon_prev, double Delta_prev, double eta,
                         const PenaltyModel& M_next, double f_x, const Vector& x, const Vector& y,
                         const Vector& y00, const SolverConfig& cfg);

/// Capped-and-floored penalty update.
double next_rho(double rho_prev, const SolverConfig& cfg);

RunRecord solve(const ProblemInstance& problem, const SolverConfig& cfg, const PdqnHooks* hooks = nullptr);

}  // namespace sparse_pd
