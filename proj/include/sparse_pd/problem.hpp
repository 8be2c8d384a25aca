#pragma once

#include "sparse_pd/core.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

namespace sparse_pd {

enum class Family {
  SparseQuadratic,
  Portfolio,
  RegressionBoston,
  LogisticIris,
  PcaWine,
  DisjunctiveQuadratic,
  PhaseRetrieval,
  SparseControl,
  Custom,
};

std::string_view to_string(Family family);
Family parse_family(std::string_view text);
/// The eight generated benchmark families, in table order.
const std::array<Family, 8>& benchmark_families();

using ObjectiveFn = std::function<double(const Vector&)>;
using GradientFn = std::function<Vector(const Vector&)>;

/// A cardinality-constrained problem min f(x) s.t. x in C, ||x||_0 <= s.
struct ProblemInstance {
  std::string id;
  Family family = Family::Custom;
  Index n = 0;
  Index m = 0;
  Index s = 0;
  SetDescriptor set = SetDescriptor::full_space();
  ObjectiveFn f;
  GradientFn g;
  Vector x0;
  std::uint64_t seed = 0;
  /// Factor the raw objective was divided by.
  double scale = 1.0;
  /// Family payload (Q, c, A, b, ...) kept alive for the evaluators; opaque to solvers.
  std::shared_ptr<const void> data;

  /// Throws std::invalid_argument when dimensions, sparsity, or x0 are inconsistent.
  void validate() const;
};

/// Evaluation front-end that charges every call against an nf2g / wall budget.
///
/// Solvers only ever see the objective through this class, so the reported
/// counters are exact by construction.
class CountedObjective {
public:
  CountedObjective(const ProblemInstance& problem, std::int64_t nf2g_max, double sec_max);

  double value(const Vector& x);
  Vector gradient(const Vector& x);

  const ProblemInstance& problem() const { return problem_; }
  EvalCounter counter() const;
  double elapsed() const { return clock_.seconds(); }
  std::int64_t remaining() const { return nf2g_max_ - (counter_.nf + 2 * counter_.ng); }

private:
  void charge(std::int64_t cost);

  const ProblemInstance& problem_;
  std::int64_t nf2g_max_;
  double sec_max_;
  EvalCounter counter_;
  Stopwatch clock_;
};

}  // namespace sparse_pd
