#pragma once

#include "sparse_pd/penalty_model.hpp"

namespace sparse_pd {

struct LineSearchResult {
  Vector x;
  double alpha = 0.0;
  bool stagnation = false;
};

/// Step control along d = x_star - x_cur measured on the penalty model only.
///
/// Starts at alpha = 1, doubles (up to 2^6) while the model keeps strictly
/// decreasing, otherwise halves until the model decreases by at least
/// varrho (1 + |Phi(x_cur)|) or alpha < 2^-20. No objective evaluations happen here.
LineSearchResult line_search(const PenaltyModel& model, const Vector& x_cur, const Vector& y,
                             const Vector& x_star, double varrho = 1e-10, bool enabled = true);

}  // namespace sparse_pd
