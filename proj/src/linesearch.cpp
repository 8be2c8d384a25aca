#include "sparse_pd/linesearch.hpp"

#include <cmath>

namespace sparse_pd {

namespace {
constexpr double kMaxAlpha = 64.0;          // 2^6
constexpr double kMinAlpha = 1.0 / 1048576.0;  // 2^-20
}  // namespace

LineSearchResult line_search(const PenaltyModel& model, const Vector& x_cur, const Vector& y,
                             const Vector& x_star, double varrho, bool enabled) {
  const Vector d = x_star - x_cur;
  if (d.cwiseAbs().maxCoeff() == 0.0) return {x_cur, 0.0, true};
  if (!enabled) return {x_star, 1.0, false};

  const double phi0 = model_value(model, x_cur, y);
  const double required = varrho * (1.0 + std::abs(phi0));
  auto phi = [&](double alpha) { return model_value(model, x_cur + alpha * d, y); };

  double alpha = 1.0;
  double best = phi(alpha);
  if (best < phi0 - required) {
    while (alpha < kMaxAlpha) {
      const double trial = phi(2.0 * alpha);
      if (!(trial < best)) break;
      best = trial;
      alpha *= 2.0;
    }
    return {x_cur + alpha * d, alpha, false};
  }
  while (alpha >= kMinAlpha) {
    alpha *= 0.5;
    if (phi(alpha) < phi0 - required) return {x_cur + alpha * d, alpha, false};
  }
  return {x_cur, 0.0, true};
}

}  // namespace sparse_pd
