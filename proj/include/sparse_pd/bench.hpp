#pragma once

#include "sparse_pd/problem.hpp"
#include "sparse_pd/record.hpp"

#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace sparse_pd {

// ============================================================================
// Randomness
// ============================================================================

/// Portable generator: the engine is fully specified by the standard, and the
/// distributions below are written out so draws do not depend on the library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on {lo, ..., hi}.
  Index uniform_int(Index lo, Index hi);
  /// Standard normal (Box-Muller).
  double normal();
  Vector normal_vector(Index n);
  Matrix normal_matrix(Index rows, Index cols);

private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of instance `index` in a suite generated from `master_seed`.
std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t index);

// ============================================================================
// Datasets
// ============================================================================

enum class DatasetName { Iris, Wine, Boston };

std::string_view to_string(DatasetName name);

struct Dataset {
  /// Standardized features, one row per sample.
  Matrix A;
  /// Target column; iris targets are +1 for class 0 (setosa) and -1 otherwise.
  Vector b;
  std::vector<std::string> columns;
};

/// $SPARSE_PD_DATA when set, otherwise the bundled fixture directory.
std::string default_data_dir();

std::string dataset_path(DatasetName name, const std::string& data_dir);

/// Parses a CSV with a header row; the last column is the target. Rows with an empty
/// field are dropped. Throws std::runtime_error naming row and column on bad input.
Dataset parse_dataset_csv(std::string_view text, DatasetName name);
Dataset load_dataset(DatasetName name, const std::string& path);

// ============================================================================
// Instance generator
// ============================================================================

/// Three-range sparsity rule followed by the clamp s <- min(max(2, s), n - 1).
Index sparsity_level(Index n, Rng& rng);

/// Symmetric Toeplitz matrix with entries 0.9^|i-j|.
Matrix toeplitz_covariance(Index n);

/// Builds one benchmark instance. Dimensions, data and x0 are drawn from `seed`.
ProblemInstance generate_instance(std::uint64_t seed, Family family,
                                  const std::string& data_dir = default_data_dir());

/// Same family construction at a prescribed size (used by tests and the CLI).
ProblemInstance generate_instance(std::uint64_t seed, Family family, Index n, Index s,
                                  const std::string& data_dir = default_data_dir());

/// Instance i uses family i mod 8 and seed instance_seed(master_seed, i).
std::vector<ProblemInstance> generate_suite(std::uint64_t master_seed, std::size_t count,
                                            const std::string& data_dir = default_data_dir());

// ============================================================================
// Harness
// ============================================================================

using SolverFn = std::function<RunRecord(const ProblemInstance&, const SolverConfig&)>;

/// pdqn, iht, pss, gss, bfs, zcws. Throws std::invalid_argument for other names.
SolverFn solver_by_name(const std::string& name);
const std::vector<std::string>& solver_names();

struct SuiteConfig {
  std::vector<std::string> solvers;
  SolverConfig solver;
  /// Worker threads; runs are independent and merged in a fixed order.
  int jobs = 1;
};

/// Runs every (solver, problem) pair, then fills f0, q and the solved flags using
/// f_opt = min over solvers of f_best. Failed runs are recorded with their message.
std::vector<RunRecord> run_suite(const SuiteConfig& config, const std::vector<ProblemInstance>& problems);

/// Fills q and solved_{q,s}{6,3} for records sharing a problem; f0 must be set.
void finalize_records(std::vector<RunRecord>& records, std::int64_t nf2g_max, double sec_max);

// ============================================================================
// Performance profiles and reports
// ============================================================================

enum class CostMeasure { Nf2g, Sec };

std::string_view to_string(CostMeasure cost);
std::string_view to_string(Criterion criterion);

struct ProfileCurve {
  std::string solver;
  /// (tau, rho(tau)) breakpoints, tau ascending from 1.
  std::vector<std::pair<double, double>> points;
};

/// Cost of reaching the criterion at tolerance eps, read from the run trace; +inf if never.
double cost_to_solve(const RunRecord& record, CostMeasure cost, Criterion criterion, double eps,
                     double f_opt, std::int64_t nf2g_max, double sec_max);

std::vector<ProfileCurve> performance_profile(const std::vector<RunRecord>& records, CostMeasure cost,
                                              Criterion criterion, double eps,
                                              std::int64_t nf2g_max = 20000, double sec_max = kInf);

struct ReportOptions {
  std::vector<double> eps{1e-6, 1e-3};
  std::int64_t nf2g_max = 20000;
  double sec_max = kInf;
  /// When false, wall-clock columns are written as 0 so reports are reproducible byte for byte.
  bool timing = true;
};

std::string records_csv(const std::vector<RunRecord>& records, bool timing = true);

struct ProfileSet {
  CostMeasure cost;
  Criterion criterion;
  double eps;
  std::vector<ProfileCurve> curves;
};

std::vector<ProfileSet> all_profiles(const std::vector<RunRecord>& records, const ReportOptions& options);
std::string profiles_csv(const std::vector<ProfileSet>& profiles);
std::string profile_svg(const ProfileSet& profile);

/// Writes records.csv, profiles.csv and one SVG per (cost, criterion, eps).
void emit_report(const std::vector<RunRecord>& records, const std::string& out_dir,
                 const ReportOptions& options);

}  // namespace sparse_pd
