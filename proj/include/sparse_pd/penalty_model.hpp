#pragma once

#include "sparse_pd/core.hpp"

namespace sparse_pd {

/// Quadratic penalty model
///   Phi(x, y) = (x - z)' g_z + 1/2 (x - z)' diag(H) (x - z) + rho/2 ||x - y||^2
/// around the expansion point z. f(z) is not included.
struct PenaltyModel {
  Vector z;
  Vector g_z;
  Vector H;
  double rho = 1.0;
};

double model_value(const PenaltyModel& model, const Vector& x, const Vector& y);

/// Gradient of the model with respect to x.
Vector model_grad_x(const PenaltyModel& model, const Vector& x, const Vector& y);

/// Unique minimizer in x: (H + rho I)^{-1} (H z + rho y - g_z), componentwise.
Vector solve_x(const PenaltyModel& model, const Vector& y);

/// min_x Phi(x, y), evaluated in closed form.
double model_min_value(const PenaltyModel& model, const Vector& y);

/// Adaptive Lipschitz estimate L <- max(L, |f - f_old| / h) with
/// h = min(0.9, max(1e-3, max(||y||_inf, 1) sqrt(eps_machine))).
double update_lipschitz(double L, double f, double f_old, const Vector& y,
                        double eps_machine = kMachineEps);

}  // namespace sparse_pd
