#pragma once

#include "sparse_pd/core.hpp"

#include <deque>

namespace sparse_pd {

/// Limited memory of step / gradient-difference pairs, oldest first.
struct CurvatureMemory {
  std::deque<Vector> S;
  std::deque<Vector> Y;
  int capacity = 10;

  explicit CurvatureMemory(int m = 10) : capacity(m) {}
  std::size_t size() const { return S.size(); }
  bool empty() const { return S.empty(); }
};

/// Appends (x_new - x_old, g_new - g_old); steps with ||s|| <= varrho are dropped.
CurvatureMemory update_memory(CurvatureMemory mem, const Vector& x_new, const Vector& x_old,
                              const Vector& g_new, const Vector& g_old, double varrho = 1e-10);

/// Diagonal Hessian approximation clipped into [lambda_min, lambda_max].
///
///   LM1  d_i = sum_k y_ki^2 / max(sum_k s_ki y_ki, varrho)
///   LM2  d_i = sigma = sum_k s_k'y_k / max(sum_k s_k's_k, varrho)
///   LM3  d = (d_prev + LM1) / 2
///   D    LM1 rescaled so its geometric mean equals the LM2 scalar
///
/// An empty memory returns d_prev.
Vector diag_update(HessianKind kind, const CurvatureMemory& mem, const Vector& d_prev,
                   const SolverConfig& cfg);

/// mu * ones, clipped into [lambda_min, lambda_max].
Vector initial_diagonal(Index n, const SolverConfig& cfg);

}  // namespace sparse_pd
