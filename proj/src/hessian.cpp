#include "sparse_pd/hessian.hpp"

#include <algorithm>
#include <cmath>

namespace sparse_pd {

CurvatureMemory update_memory(CurvatureMemory mem, const Vector& x_new, const Vector& x_old,
                              const Vector& g_new, const Vector& g_old, double varrho) {
  Vector s = x_new - x_old;
  if (!(s.norm() > varrho)) return mem;
  Vector y = g_new - g_old;
  if (!s.allFinite() || !y.allFinite()) return mem;
  mem.S.push_back(std::move(s));
  mem.Y.push_back(std::move(y));
  while (static_cast<int>(mem.S.size()) > mem.capacity) {
    mem.S.pop_front();
    mem.Y.pop_front();
  }
  return mem;
}

namespace {

Vector clip(const Vector& d, const SolverConfig& cfg) {
  Vector out = d;
  for (Index i = 0; i < out.size(); ++i) {
    // NaN maps to the floor.
    out[i] = std::isnan(out[i]) ? cfg.lambda_min : std::clamp(out[i], cfg.lambda_min, cfg.lambda_max);
  }
  return out;
}

Vector secant_diagonal(const CurvatureMemory& mem, Index n, double varrho) {
  Vector yy = Vector::Zero(n);
  Vector sy = Vector::Zero(n);
  for (std::size_t k = 0; k < mem.size(); ++k) {
    yy += mem.Y[k].cwiseAbs2();
    sy += mem.S[k].cwiseProduct(mem.Y[k]);
  }
  return yy.cwiseQuotient(sy.cwiseMax(varrho));
}

double spectral_scalar(const CurvatureMemory& mem, double varrho) {
  double sy = 0.0;
  double ss = 0.0;
  for (std::size_t k = 0; k < mem.size(); ++k) {
    sy += mem.S[k].dot(mem.Y[k]);
    ss += mem.S[k].squaredNorm();
  }
  return sy / std::max(ss, varrho);
}

}  // namespace

Vector diag_update(HessianKind kind, const CurvatureMemory& mem, const Vector& d_prev,
                   const SolverConfig& cfg) {
  if (mem.empty()) return d_prev;
  const Index n = d_prev.size();
  switch (kind) {
    case HessianKind::LM1:
      return clip(secant_diagonal(mem, n, cfg.varrho), cfg);
    case HessianKind::LM2:
      return clip(Vector::Constant(n, spectral_scalar(mem, cfg.varrho)), cfg);
    case HessianKind::LM3:
      return clip(0.5 * (d_prev + clip(secant_diagonal(mem, n, cfg.varrho), cfg)), cfg);
    case HessianKind::D: {
      const Vector base = clip(secant_diagonal(mem, n, cfg.varrho), cfg);
      const double sigma = std::clamp(spectral_scalar(mem, cfg.varrho), cfg.lambda_min, cfg.lambda_max);
      const double log_mean = base.array().log().mean();
      return clip(base * (sigma / std::exp(log_mean)), cfg);
    }
  }
  return d_prev;
}

Vector initial_diagonal(Index n, const SolverConfig& cfg) {
  return clip(Vector::Constant(n, cfg.mu), cfg);
}

}  // namespace sparse_pd
