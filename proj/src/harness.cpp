#include "sparse_pd/baselines.hpp"
#include "sparse_pd/bench.hpp"
#include "sparse_pd/pdqn.hpp"
#include "sparse_pd/stationarity.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace sparse_pd {

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names{"pdqn", "iht", "pss", "gss", "bfs", "zcws"};
  return names;
}

SolverFn solver_by_name(const std::string& name) {
  if (name == "pdqn") return [](const ProblemInstance& p, const SolverConfig& c) { return solve(p, c); };
  if (name == "iht") return iht;
  if (name == "pss") return pss;
  if (name == "gss") return gss;
  if (name == "zcws") return zcws;
  if (name == "bfs") return [](const ProblemInstance& p, const SolverConfig& c) { return bfs_search(p, c).record; };
  throw std::invalid_argument("unknown solver '" + name + "'");
}

namespace {

RunRecord run_one(const ProblemInstance& problem, const std::string& name, const SolverFn& fn,
                  const SolverConfig& cfg) {
  RunRecord rec;
  try {
    rec = fn(problem, cfg);
  } catch (const std::exception& e) {
    rec = RunRecord{};
    rec.solver = name;
    rec.problem = problem.id;
    rec.family = problem.family;
    rec.n = problem.n;
    rec.m = problem.m;
    rec.s = problem.s;
    rec.termination = Termination::Failed;
    rec.error = e.what();
  }
  rec.f0 = problem.f(problem.x0);
  return rec;
}

}  // namespace

std::vector<RunRecord> run_suite(const SuiteConfig& config, const std::vector<ProblemInstance>& problems) {
  if (config.solvers.empty()) throw std::invalid_argument("run_suite: no solvers given");
  config.solver.validate();
  std::vector<SolverFn> fns;
  for (const auto& name : config.solvers) fns.push_back(solver_by_name(name));

  const std::size_t n_solvers = config.solvers.size();
  const std::size_t total = problems.size() * n_solvers;
  std::vector<RunRecord> records(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t p = k / n_solvers;
      const std::size_t s = k % n_solvers;
      records[k] = run_one(problems[p], config.solvers[s], fns[s], config.solver);
    }
  };
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  finalize_records(records, config.solver.nf2g_max, config.solver.sec_max);
  return records;
}

void finalize_records(std::vector<RunRecord>& records, std::int64_t nf2g_max, double sec_max) {
  std::map<std::string, double> f_opt;
  for (const auto& r : records) {
    auto [it, inserted] = f_opt.try_emplace(r.problem, r.f_best);
    if (!inserted) it->second = std::min(it->second, r.f_best);
  }
  for (auto& r : records) {
    r.q = std::isfinite(r.f_best) ? q_sol(r.f_best, f_opt[r.problem], r.f0) : kInf;
    r.solved_q6 = classify_solved(r, 1e-6, nf2g_max, sec_max, Criterion::Objective);
    r.solved_q3 = classify_solved(r, 1e-3, nf2g_max, sec_max, Criterion::Objective);
    r.solved_s6 = classify_solved(r, 1e-6, nf2g_max, sec_max, Criterion::Strong);
    r.solved_s3 = classify_solved(r, 1e-3, nf2g_max, sec_max, Criterion::Strong);
  }
}

}  // namespace sparse_pd
