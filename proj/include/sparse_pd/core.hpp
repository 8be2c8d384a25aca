#pragma once

#include <Eigen/Dense>

#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sparse_pd {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
/// Unit roundoff of binary64.
inline constexpr double kMachineEps = std::numeric_limits<double>::epsilon();
/// Absolute tolerance on every defining (in)equality of a feasible set.
inline constexpr double kFeasTol = 1e-12;

// ============================================================================
// Feasible sets
// ============================================================================

enum class SetKind { FullSpace, NonnegOrthant, Simplex, UnitSum, LpBall, Box };

enum class Symmetry { NonnegType1, Type2 };

/// A permutation-symmetric closed convex set C.
///
/// Boxes are used with the nonnegative rule when lower >= 0 and with the
/// sign-symmetric rule when lower == -upper; any other box falls back to the
/// nonnegative rule for gradient scores.
class SetDescriptor {
public:
  static SetDescriptor full_space() { return SetDescriptor(SetKind::FullSpace); }
  static SetDescriptor nonneg_orthant() { return SetDescriptor(SetKind::NonnegOrthant); }
  static SetDescriptor simplex() { return SetDescriptor(SetKind::Simplex); }
  static SetDescriptor unit_sum() { return SetDescriptor(SetKind::UnitSum); }
  /// p may be +inf for the max-norm ball.
  static SetDescriptor lp_ball(double p, double radius);
  static SetDescriptor box(double lower, double upper);

  SetKind kind() const { return kind_; }
  Symmetry symmetry() const;
  double p() const { return p_; }
  double radius() const { return radius_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

  bool bounded() const;
  /// max ||x|| over C, or +inf for unbounded sets.
  double max_norm(Index n) const;

  /// Membership test with kFeasTol on each defining constraint.
  bool contains(const Eigen::Ref<const Vector>& x, double tol = kFeasTol) const;

  std::string to_string() const;
  static SetDescriptor parse(std::string_view text);

  friend bool operator==(const SetDescriptor&, const SetDescriptor&) = default;

private:
  explicit SetDescriptor(SetKind kind) : kind_(kind) {}

  SetKind kind_;
  double p_ = 2.0;
  double radius_ = 1.0;
  double lower_ = 0.0;
  double upper_ = 1.0;
};

/// Symmetry function: identity for nonnegative type-1 sets, |.| for type-2.
Vector symmetry_scores(const Eigen::Ref<const Vector>& v, Symmetry sym);

// ============================================================================
// Evaluation accounting
// ============================================================================

struct EvalCounter {
  std::int64_t nf = 0;
  std::int64_t ng = 0;
  double wall_seconds = 0.0;

  std::int64_t nf2g() const { return nf + 2 * ng; }
};

/// Thrown by counted evaluations that would exceed the nf2g or wall budget.
struct BudgetExhausted : std::runtime_error {
  BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

/// Raised when a restricted feasible set C_L is empty (e.g. a simplex on zero coordinates).
struct InfeasibleRestriction : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ============================================================================
// Configuration
// ============================================================================

enum class HessianKind { D, LM1, LM2, LM3 };

std::string_view to_string(HessianKind kind);
HessianKind parse_hessian_kind(std::string_view text);

struct SolverConfig {
  double r = 1.15;
  double rho0 = 1e-2;
  double rho_min = 1e-2;
  double rho_max = 1e2;
  double tau = 0.999;
  double eps0 = 0.1;
  double eps_min = kMachineEps;
  int memory = 10;
  double c_hat = 100.0;
  double c_small = 1e-8;
  double mu = 1.0;
  double varrho = 1e-10;
  std::int64_t nf2g_max = 20000;
  double sec_max = kInf;
  double eps = 1e-6;
  int bfs_max_iter = 15;
  int pss_max_iter = 5;
  int fista_max_iter = 100;
  double lambda_min = 1e-4;
  double lambda_max = 1e4;
  HessianKind hessian = HessianKind::LM1;
  bool line_search = true;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

/// Reads a flat `key = value` file; `#` starts a comment. Absent keys keep defaults.
SolverConfig load_config(const std::string& path);
SolverConfig parse_config(std::string_view text);

// ============================================================================
// Schedules and parameter checks
// ============================================================================

struct Tolerances {
  double eps;
  double eta;
};

/// eps_k = eta_k = max(eps_min, 0.1 exp(-1e-3 k)).
Tolerances tolerance_schedule(std::int64_t k, double eps_min);

struct AssumptionReport {
  double theta_bar = 0.0;
  double kappa_bar = 0.0;
  double c_min = kInf;
  double R_inf = kInf;
  bool ok = false;
};

/// Contraction constants of the bounded-penalty regime. zeta >= 1.
AssumptionReport validate_assumptions(double lambda_min, double lambda_max, double gamma,
                                      double rho_min, double zeta);

// ============================================================================
// Wall clock
// ============================================================================

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace sparse_pd
