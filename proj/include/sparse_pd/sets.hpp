#pragma once

#include "sparse_pd/core.hpp"

#include <vector>

namespace sparse_pd {

/// Sorted, duplicate-free index set in [0, n).
struct SupportSet {
  std::vector<Index> indices;
  Index n = 0;

  SupportSet() = default;
  /// Sorts and deduplicates `idx`; throws if any index is outside [0, n).
  SupportSet(std::vector<Index> idx, Index n);

  /// I_1(x): indices of the nonzero entries of x.
  static SupportSet of_nonzeros(const Eigen::Ref<const Vector>& x);

  Index size() const { return static_cast<Index>(indices.size()); }
  bool empty() const { return indices.empty(); }
  bool contains(Index i) const;
  /// Complement [n] \ this.
  SupportSet complement() const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;
};

/// Order of indices along which `values` is nonincreasing; ties by ascending index.
struct SortingPermutation {
  std::vector<Index> order;

  static SortingPermutation of(const Eigen::Ref<const Vector>& values);
  /// Window {order[first], ..., order[last]} with 0-based inclusive bounds; empty when first > last.
  std::vector<Index> window(Index first, Index last) const;
};

/// The k largest entries of `scores` restricted to `candidates`, ties by ascending index.
std::vector<Index> top_k(const Eigen::Ref<const Vector>& scores, const std::vector<Index>& candidates,
                         Index k);

Vector restrict_to(const Eigen::Ref<const Vector>& x, const SupportSet& support);
/// U_L x_L: zero outside the support.
Vector embed(const Eigen::Ref<const Vector>& x_restricted, const SupportSet& support);

/// Euclidean projection onto C.
Vector project_convex(const Eigen::Ref<const Vector>& x, const SetDescriptor& set);

/// Projection onto C_L = {z in R^|L| : U_L z in C}. Throws InfeasibleRestriction when C_L is empty.
Vector project_convex_restricted(const Eigen::Ref<const Vector>& x_restricted,
                                 const SetDescriptor& set, const SupportSet& support);

/// A minimizer of ||z - x|| over C intersected with {||z||_0 <= s}.
Vector sparse_project(const Eigen::Ref<const Vector>& x, const SetDescriptor& set, Index s);

/// Super-support L = I_1(y) + the s - |I_1(y)| zero indices with largest p(-score).
/// When y already has s nonzeros, off-support indices with strictly larger p(-score)
/// replace the weakest on-support indices.
SupportSet select_super_support(const Eigen::Ref<const Vector>& y,
                                const Eigen::Ref<const Vector>& score, Index s, Symmetry sym);

namespace detail {
Vector project_simplex(const Eigen::Ref<const Vector>& x);
Vector project_l1_ball(const Eigen::Ref<const Vector>& x, double radius);
Vector project_lp_ball(const Eigen::Ref<const Vector>& x, double p, double radius);
}  // namespace detail

}  // namespace sparse_pd
