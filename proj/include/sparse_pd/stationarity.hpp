#pragma once

#include "sparse_pd/problem.hpp"
#include "sparse_pd/record.hpp"
#include "sparse_pd/sets.hpp"

namespace sparse_pd {

/// (f_sol - f_opt) / (f0 - f_opt); 0 when all three coincide, +inf when f0 == f_opt < f_sol.
double q_sol(double f_sol, double f_opt, double f0);

/// Index set on which stationarity is measured: I_1(x) when ||x||_0 = s, otherwise
/// I_1(x) plus the zero coordinates with the largest p(-g) (ties by ascending index).
SupportSet stationarity_support(const Vector& x, const Vector& g, const SetDescriptor& set, Index s);

/// ||x_S - P_{C_S}(x_S - step g_S)||_inf.
double restricted_residual(const Vector& x, const Vector& g, const SetDescriptor& set,
                           const SupportSet& support, double step = 1.0);

/// Strong-stationarity residual: restricted projected-gradient residual, plus the best
/// swap advantage max(0, max_{I_0} p(-g) - min_{I_1} p(-g)) when ||x||_0 = s.
/// Throws std::invalid_argument for infeasible x.
double rg_S(const Vector& x, const Vector& g, const SetDescriptor& set, Index s);

/// Basic-feasible test on the stationarity support. The scaled fixed-point residual
/// L' ||x_T - P(x_T - g_T / L')||_inf must be <= tol for L' in {L/10, L, 10 L}.
bool check_BF(const Vector& x, const Vector& g, const SetDescriptor& set, Index s, double L = 1.0,
              double tol = 1e-6);
/// Diagnostic overload; evaluates the gradient directly (uncounted).
bool check_BF(const Vector& x, const ProblemInstance& problem, double L = 1.0, double tol = 1e-6);

/// Exists |L| = s with g_L = 0 (within tol) and x zero off L.
bool check_lu_zhang(const Vector& x, const Vector& g, Index s, double tol = 1e-8);

/// x attains the distance of the sparse projection of x - g / L (within tol).
bool check_L_stationarity(const Vector& x, const Vector& g, const SetDescriptor& set, Index s,
                          double L, double tol = 1e-8);

/// Solved iff R <= eps, nf2g <= nf2g_max and wall <= sec_max, with R = q or rg_S.
bool classify_solved(const RunRecord& record, double eps, std::int64_t nf2g_max, double sec_max,
                     Criterion criterion);

}  // namespace sparse_pd
