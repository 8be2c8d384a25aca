#include "sparse_pd/record.hpp"

#include "sparse_pd/sets.hpp"
#include "sparse_pd/stationarity.hpp"

namespace sparse_pd {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::Budget: return "budget";
    case Termination::Stagnation: return "stagnation";
    case Termination::Failed: return "failed";
  }
  return "?";
}

RunMonitor::RunMonitor(CountedObjective& objective, double eps) : objective_(objective), eps_(eps) {}

void RunMonitor::check_feasible(const Vector& x) const {
  const auto& problem = objective_.problem();
  if ((x.array() != 0.0).count() > problem.s || !problem.set.contains(x))
    throw std::logic_error("solver produced an infeasible iterate");
}

void RunMonitor::push_trace() {
  const EvalCounter c = objective_.counter();
  trace_.push_back({c.nf, c.ng, c.wall_seconds, f_best_, rgS_best_});
}

bool RunMonitor::observe(const Vector& x, double f, const Vector& g) {
  check_feasible(x);
  const auto& problem = objective_.problem();
  const double r = rg_S(x, g, problem.set, problem.s);
  bool improved = false;
  if (f < f_best_) {
    f_best_ = f;
    x_best_ = x;
    improved = true;
  }
  if (r < rgS_best_) {
    rgS_best_ = r;
    improved = true;
  }
  if (improved) push_trace();
  return done();
}

void RunMonitor::observe_value(const Vector& x, double f) {
  check_feasible(x);
  if (f < f_best_) {
    f_best_ = f;
    x_best_ = x;
    push_trace();
  }
}

RunRecord RunMonitor::finish(std::string solver, Termination termination) const {
  const auto& problem = objective_.problem();
  const EvalCounter c = objective_.counter();
  RunRecord rec;
  rec.solver = std::move(solver);
  rec.problem = problem.id;
  rec.family = problem.family;
  rec.n = problem.n;
  rec.m = problem.m;
  rec.s = problem.s;
  rec.f_best = f_best_;
  rec.rgS_best = rgS_best_;
  rec.nf = c.nf;
  rec.ng = c.ng;
  rec.nf2g = c.nf2g();
  rec.wall_seconds = c.wall_seconds;
  rec.termination = termination;
  rec.x_best = x_best_;
  rec.trace = trace_;
  return rec;
}

}  // namespace sparse_pd
