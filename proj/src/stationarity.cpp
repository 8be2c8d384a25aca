#include "sparse_pd/stationarity.hpp"

#include <algorithm>
#include <cmath>

namespace sparse_pd {

namespace {
constexpr double kDiagnosticFeasTol = 1e-9;
}

double q_sol(double f_sol, double f_opt, double f0) {
  const double gap = f0 - f_opt;
  const double excess = f_sol - f_opt;
  if (gap == 0.0) return excess == 0.0 ? 0.0 : kInf;
  return excess / gap;
}

SupportSet stationarity_support(const Vector& x, const Vector& g, const SetDescriptor& set, Index s) {
  const SupportSet active = SupportSet::of_nonzeros(x);
  if (active.size() >= s) return active;
  const Vector priority = symmetry_scores(-g, set.symmetry());
  std::vector<Index> idx = active.indices;
  const auto extra = top_k(priority, active.complement().indices, s - active.size());
  idx.insert(idx.end(), extra.begin(), extra.end());
  return SupportSet(std::move(idx), x.size());
}

double restricted_residual(const Vector& x, const Vector& g, const SetDescriptor& set,
                           const SupportSet& support, double step) {
  if (support.empty()) return 0.0;
  const Vector xs = restrict_to(x, support);
  const Vector gs = restrict_to(g, support);
  const Vector proj = project_convex_restricted(xs - step * gs, set, support);
  return (xs - proj).cwiseAbs().maxCoeff();
}

double rg_S(const Vector& x, const Vector& g, const SetDescriptor& set, Index s) {
  const SupportSet active = SupportSet::of_nonzeros(x);
  if (active.size() > s || !set.contains(x, kDiagnosticFeasTol))
    throw std::invalid_argument("rg_S: point is not in C intersected with C_s");
  const SupportSet support = stationarity_support(x, g, set, s);
  const double residual = restricted_residual(x, g, set, support);
  if (active.size() < s) return residual;

  const SupportSet inactive = active.complement();
  if (inactive.empty() || active.empty()) return residual;
  const Vector priority = symmetry_scores(-g, set.symmetry());
  double best_out = -kInf;
  for (Index j : inactive.indices) best_out = std::max(best_out, priority[j]);
  double worst_in = kInf;
  for (Index i : active.indices) worst_in = std::min(worst_in, priority[i]);
  return std::max(residual, std::max(0.0, best_out - worst_in));
}

bool check_BF(const Vector& x, const Vector& g, const SetDescriptor& set, Index s, double L,
              double tol) {
  if (!(L > 0.0)) throw std::invalid_argument("check_BF requires L > 0");
  if (SupportSet::of_nonzeros(x).size() > s || !set.contains(x, kDiagnosticFeasTol)) return false;
  const SupportSet support = stationarity_support(x, g, set, s);
  for (double scale : {0.1, 1.0, 10.0}) {
    const double Lk = scale * L;
    if (Lk * restricted_residual(x, g, set, support, 1.0 / Lk) > tol) return false;
  }
  return true;
}

bool check_BF(const Vector& x, const ProblemInstance& problem, double L, double tol) {
  return check_BF(x, problem.g(x), problem.set, problem.s, L, tol);
}

bool check_lu_zhang(const Vector& x, const Vector& g, Index s, double tol) {
  const SupportSet active = SupportSet::of_nonzeros(x);
  if (active.size() > s) return false;
  for (Index i : active.indices)
    if (std::abs(g[i]) > tol) return false;
  const Vector priority = -g.cwiseAbs();
  const auto extra = top_k(priority, active.complement().indices, s - active.size());
  for (Index j : extra)
    if (std::abs(g[j]) > tol) return false;
  return true;
}

bool check_L_stationarity(const Vector& x, const Vector& g, const SetDescriptor& set, Index s,
                          double L, double tol) {
  if (!(L > 0.0)) throw std::invalid_argument("check_L_stationarity requires L > 0");
  if (SupportSet::of_nonzeros(x).size() > s || !set.contains(x, kDiagnosticFeasTol)) return false;
  const Vector target = x - g / L;
  const Vector z = sparse_project(target, set, s);
  const double best = (z - target).squaredNorm();
  const double mine = (x - target).squaredNorm();
  return mine <= best + tol * std::max(1.0, best);
}

bool classify_solved(const RunRecord& record, double eps, std::int64_t nf2g_max, double sec_max,
                     Criterion criterion) {
  const double R = criterion == Criterion::Objective ? record.q : record.rgS_best;
  return R <= eps && record.nf2g <= nf2g_max && record.wall_seconds <= sec_max;
}

}  // namespace sparse_pd
