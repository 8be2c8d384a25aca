#pragma once

#include "sparse_pd/problem.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace sparse_pd {

enum class Termination { Converged, Budget, Stagnation, Failed };

std::string_view to_string(Termination t);

enum class Criterion { Objective, Strong };

/// Best-so-far snapshot, appended whenever f_best or rgS_best improves.
struct TracePoint {
  std::int64_t nf = 0;
  std::int64_t ng = 0;
  double sec = 0.0;
  double f_best = kInf;
  double rgS_best = kInf;

  std::int64_t nf2g() const { return nf + 2 * ng; }
};

/// Outcome of one (solver, problem) run.
struct RunRecord {
  std::string solver;
  std::string problem;
  Family family = Family::Custom;
  Index n = 0;
  Index m = 0;
  Index s = 0;
  double f0 = std::numeric_limits<double>::quiet_NaN();
  double f_best = kInf;
  double rgS_best = kInf;
  double q = std::numeric_limits<double>::quiet_NaN();
  std::int64_t nf = 0;
  std::int64_t ng = 0;
  std::int64_t nf2g = 0;
  double wall_seconds = 0.0;
  bool solved_q6 = false;
  bool solved_q3 = false;
  bool solved_s6 = false;
  bool solved_s3 = false;
  Termination termination = Termination::Failed;
  Vector x_best;
  std::vector<TracePoint> trace;
  std::string error;
};

class CountedObjective;

/// Tracks the best feasible iterates a solver has evaluated and applies the stop test rg_S <= eps.
class RunMonitor {
public:
  RunMonitor(CountedObjective& objective, double eps);

  /// Records a feasible point with its objective value and gradient. Returns done().
  bool observe(const Vector& x, double f, const Vector& g);
  /// Records a feasible point whose gradient is not available.
  void observe_value(const Vector& x, double f);

  bool done() const { return rgS_best_ <= eps_; }
  double f_best() const { return f_best_; }
  double rgS_best() const { return rgS_best_; }
  const Vector& x_best() const { return x_best_; }

  RunRecord finish(std::string solver, Termination termination) const;

private:
  void check_feasible(const Vector& x) const;
  void push_trace();

  CountedObjective& objective_;
  double eps_;
  double f_best_ = kInf;
  double rgS_best_ = kInf;
  Vector x_best_;
  std::vector<TracePoint> trace_;
};

}  // namespace sparse_pd
