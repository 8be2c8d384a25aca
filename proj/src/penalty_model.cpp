#include "sparse_pd/penalty_model.hpp"

#include <algorithm>
#include <cmath>

namespace sparse_pd {

double model_value(const PenaltyModel& model, const Vector& x, const Vector& y) {
  const Vector dx = x - model.z;
  return dx.dot(model.g_z) + 0.5 * dx.dot(model.H.cwiseProduct(dx)) +
         0.5 * model.rho * (x - y).squaredNorm();
}

Vector model_grad_x(const PenaltyModel& model, const Vector& x, const Vector& y) {
  return model.g_z + model.H.cwiseProduct(x - model.z) + model.rho * (x - y);
}

Vector solve_x(const PenaltyModel& model, const Vector& y) {
  const Vector denom = (model.H.array() + model.rho).matrix();
  return model.z + (model.rho * (y - model.z) - model.g_z).cwiseQuotient(denom);
}

double model_min_value(const PenaltyModel& model, const Vector& y) {
  return model_value(model, solve_x(model, y), y);
}

double update_lipschitz(double L, double f, double f_old, const Vector& y, double eps_machine) {
  const double ynorm = y.size() > 0 ? y.cwiseAbs().maxCoeff() : 0.0;
  const double h = std::min(0.9, std::max(1e-3, std::max(ynorm, 1.0) * std::sqrt(eps_machine)));
  return std::max(L, std::abs(f - f_old) / h);
}

}  // namespace sparse_pd
