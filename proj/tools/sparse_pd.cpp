// sparse-pd: solve, check and benchmark cardinality-constrained problems.

#include "sparse_pd/baselines.hpp"
#include "sparse_pd/bench.hpp"
#include "sparse_pd/pdqn.hpp"
#include "sparse_pd/stationarity.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace sparse_pd;
using nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

/// "<seed>:<family>" or a JSON file {"family": ..., "seed": ..., "n": ..., "s": ...}.
ProblemInstance load_problem(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos && spec.find('/') == std::string::npos && spec.find(".json") == std::string::npos) {
    const auto seed = std::stoull(spec.substr(0, colon));
    return generate_instance(seed, parse_family(spec.substr(colon + 1)));
  }
  const json j = read_json(spec);
  const Family family = parse_family(j.at("family").get<std::string>());
  const auto seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("n")) return generate_instance(seed, family, j.at("n").get<Index>(), j.at("s").get<Index>());
  return generate_instance(seed, family);
}

Vector load_point(const std::string& path) {
  const json j = read_json(path);
  const json& arr = j.is_object() ? j.at("x") : j;
  const auto values = arr.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

json record_json(const RunRecord& r) {
  json j;
  j["solver"] = r.solver;
  j["problem"] = r.problem;
  j["family"] = std::string(to_string(r.family));
  j["n"] = r.n;
  j["m"] = r.m;
  j["s"] = r.s;
  j["f0"] = r.f0;
  j["f_best"] = r.f_best;
  j["rgS"] = r.rgS_best;
  j["q"] = r.q;
  j["nf"] = r.nf;
  j["ng"] = r.ng;
  j["nf2g"] = r.nf2g;
  j["sec"] = r.wall_seconds;
  j["termination"] = std::string(to_string(r.termination));
  j["x_best"] = std::vector<double>(r.x_best.data(), r.x_best.data() + r.x_best.size());
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

struct CommonOptions {
  std::string config_path;
  std::string hessian = "lm1";
  std::string linesearch = "on";
  std::int64_t budget = 20000;

  SolverConfig build() const {
    SolverConfig cfg = config_path.empty() ? SolverConfig{} : load_config(config_path);
    cfg.hessian = parse_hessian_kind(hessian);
    if (linesearch != "on" && linesearch != "off") throw std::invalid_argument("--linesearch must be on or off");
    cfg.line_search = linesearch == "on";
    cfg.nf2g_max = budget;
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "key = value solver configuration file");
  cmd->add_option("--hessian", opt.hessian, "diagonal Hessian variant: d, lm1, lm2, lm3");
  cmd->add_option("--linesearch", opt.linesearch, "on or off");
  cmd->add_option("--budget", opt.budget, "maximum nf + 2 ng");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Penalty decomposition quasi-Newton solver for cardinality-constrained problems"};
  app.require_subcommand(1);

  // solve
  CommonOptions solve_opt;
  std::string solve_problem, solve_solver = "pdqn", solve_out;
  double solve_eps = 1e-6;
  auto* solve_cmd = app.add_subcommand("solve", "Run one solver on one problem");
  solve_cmd->add_option("--problem", solve_problem, "<seed>:<family> or problem JSON file")->required();
  solve_cmd->add_option("--solver", solve_solver, "pdqn, iht, pss, gss, bfs, zcws");
  solve_cmd->add_option("--eps", solve_eps, "stop once rg_S <= eps");
  solve_cmd->add_option("--out", solve_out, "write the run record as JSON");
  add_common(solve_cmd, solve_opt);

  // check
  std::string check_point, check_problem;
  double check_L = 1.0;
  double check_f_opt = std::numeric_limits<double>::quiet_NaN();
  auto* check_cmd = app.add_subcommand("check", "Stationarity diagnostics at a point");
  check_cmd->add_option("--point", check_point, "JSON array or {\"x\": [...]}")->required();
  check_cmd->add_option("--problem", check_problem, "<seed>:<family> or problem JSON file")->required();
  check_cmd->add_option("--L", check_L, "step parameter for the BF and L-stationarity tests");
  check_cmd->add_option("--f-opt", check_f_opt, "reference optimum for q");

  // bench
  CommonOptions bench_opt;
  std::uint64_t bench_seed = 42;
  std::size_t bench_problems = 30;
  std::string bench_solvers = "pdqn,iht,pss,gss,bfs,zcws", bench_eps = "1e-6,1e-3", bench_out = "results";
  int bench_jobs = 1;
  bool bench_no_timing = false;
  auto* bench_cmd = app.add_subcommand("bench", "Generate the suite, run all solvers, write profiles");
  bench_cmd->add_option("--seed", bench_seed, "master seed");
  bench_cmd->add_option("--problems", bench_problems, "number of instances");
  bench_cmd->add_option("--solvers", bench_solvers, "comma-separated solver names");
  bench_cmd->add_option("--eps", bench_eps, "comma-separated tolerances");
  bench_cmd->add_option("--out", bench_out, "output directory");
  bench_cmd->add_option("--jobs", bench_jobs, "worker threads");
  bench_cmd->add_flag("--no-timing", bench_no_timing, "write sec = 0 for reproducible output");
  add_common(bench_cmd, bench_opt);

  // generate
  std::uint64_t gen_seed = 42;
  std::size_t gen_problems = 30;
  auto* gen_cmd = app.add_subcommand("generate", "List the instances of a suite");
  gen_cmd->add_option("--seed", gen_seed, "master seed");
  gen_cmd->add_option("--problems", gen_problems, "number of instances");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      SolverConfig cfg = solve_opt.build();
      cfg.eps = solve_eps;
      const ProblemInstance problem = load_problem(solve_problem);
      RunRecord rec = solver_by_name(solve_solver)(problem, cfg);
      rec.f0 = problem.f(problem.x0);
      std::printf("%s %s n=%ld s=%ld f=%.10g rgS=%.3e nf2g=%ld termination=%s\n", rec.solver.c_str(),
                  rec.problem.c_str(), static_cast<long>(rec.n), static_cast<long>(rec.s), rec.f_best,
                  rec.rgS_best, static_cast<long>(rec.nf2g), std::string(to_string(rec.termination)).c_str());
      if (!solve_out.empty()) {
        std::ofstream out(solve_out);
        if (!out) throw std::runtime_error("cannot write " + solve_out);
        out << record_json(rec).dump(2) << '\n';
      }
    } else if (*check_cmd) {
      const ProblemInstance problem = load_problem(check_problem);
      const Vector x = load_point(check_point);
      if (x.size() != problem.n) throw std::invalid_argument("point dimension does not match the problem");
      const Vector g = problem.g(x);
      const double f = problem.f(x);
      const bool feasible = SupportSet::of_nonzeros(x).size() <= problem.s && problem.set.contains(x);
      std::printf("f %.17g\n", f);
      std::printf("feasible %d\n", int(feasible));
      if (feasible)
        std::printf("rgS %.6e\n", rg_S(x, g, problem.set, problem.s));
      else
        std::printf("rgS error:infeasible\n");
      std::printf("bf %d\n", int(check_BF(x, g, problem.set, problem.s, check_L)));
      std::printf("lu_zhang %d\n", int(check_lu_zhang(x, g, problem.s)));
      std::printf("l_stationary %d\n", int(check_L_stationarity(x, g, problem.set, problem.s, check_L)));
      if (!std::isnan(check_f_opt)) std::printf("q %.6e\n", q_sol(f, check_f_opt, problem.f(problem.x0)));
    } else if (*bench_cmd) {
      SuiteConfig suite;
      suite.solvers = split_list(bench_solvers);
      suite.solver = bench_opt.build();
      suite.jobs = bench_jobs;
      ReportOptions report;
      report.eps.clear();
      for (const auto& e : split_list(bench_eps)) report.eps.push_back(std::stod(e));
      if (report.eps.empty()) throw std::invalid_argument("--eps needs at least one value");
      suite.solver.eps = *std::min_element(report.eps.begin(), report.eps.end());
      report.nf2g_max = suite.solver.nf2g_max;
      report.timing = !bench_no_timing;
      const auto problems = generate_suite(bench_seed, bench_problems);
      const auto records = run_suite(suite, problems);
      emit_report(records, bench_out, report);
      for (const auto& name : suite.solvers) {
        int q3 = 0, s3 = 0, failed = 0;
        for (const auto& r : records) {
          if (r.solver != name) continue;
          q3 += r.solved_q3;
          s3 += r.solved_s3;
          failed += r.termination == Termination::Failed;
        }
        std::printf("%-5s solved(q<=1e-3)=%d solved(rgS<=1e-3)=%d failed=%d\n", name.c_str(), q3, s3, failed);
      }
      std::printf("wrote %s/records.csv\n", bench_out.c_str());
    } else if (*gen_cmd) {
      std::printf("id,family,n,m,s,set,scale\n");
      for (const auto& p : generate_suite(gen_seed, gen_problems))
        std::printf("%s,%s,%ld,%ld,%ld,%s,%.6g\n", p.id.c_str(), std::string(to_string(p.family)).c_str(),
                    static_cast<long>(p.n), static_cast<long>(p.m), static_cast<long>(p.s),
                    p.set.to_string().c_str(), p.scale);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
