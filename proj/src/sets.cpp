#include "sparse_pd/sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sparse_pd {

SupportSet::SupportSet(std::vector<Index> idx, Index n_) : indices(std::move(idx)), n(n_) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!indices.empty() && (indices.front() < 0 || indices.back() >= n))
    throw std::out_of_range("support index outside [0, n)");
}

SupportSet SupportSet::of_nonzeros(const Eigen::Ref<const Vector>& x) {
  std::vector<Index> idx;
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) idx.push_back(i);
  SupportSet out;
  out.indices = std::move(idx);
  out.n = x.size();
  return out;
}

bool SupportSet::contains(Index i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

SupportSet SupportSet::complement() const {
  SupportSet out;
  out.n = n;
  std::size_t k = 0;
  for (Index i = 0; i < n; ++i) {
    if (k < indices.size() && indices[k] == i) {
      ++k;
      continue;
    }
    out.indices.push_back(i);
  }
  return out;
}

namespace {

bool ranks_before(const Eigen::Ref<const Vector>& v, Index a, Index b) {
  return v[a] > v[b] || (v[a] == v[b] && a < b);
}

}  // namespace

SortingPermutation SortingPermutation::of(const Eigen::Ref<const Vector>& values) {
  SortingPermutation out;
  out.order.resize(static_cast<std::size_t>(values.size()));
  std::iota(out.order.begin(), out.order.end(), Index{0});
  std::sort(out.order.begin(), out.order.end(),
            [&](Index a, Index b) { return ranks_before(values, a, b); });
  return out;
}

std::vector<Index> SortingPermutation::window(Index first, Index last) const {
  if (first < 0 || first > last || last >= static_cast<Index>(order.size())) return {};
  return {order.begin() + first, order.begin() + last + 1};
}

std::vector<Index> top_k(const Eigen::Ref<const Vector>& scores, const std::vector<Index>& candidates,
                         Index k) {
  std::vector<Index> pool = candidates;
  const auto take = static_cast<std::size_t>(std::clamp<Index>(k, 0, static_cast<Index>(pool.size())));
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end(),
                    [&](Index a, Index b) { return ranks_before(scores, a, b); });
  pool.resize(take);
  return pool;
}

Vector restrict_to(const Eigen::Ref<const Vector>& x, const SupportSet& support) {
  Vector out(support.size());
  for (Index k = 0; k < support.size(); ++k) out[k] = x[support.indices[static_cast<std::size_t>(k)]];
  return out;
}

Vector embed(const Eigen::Ref<const Vector>& x_restricted, const SupportSet& support) {
  Vector out = Vector::Zero(support.n);
  for (Index k = 0; k < support.size(); ++k)
    out[support.indices[static_cast<std::size_t>(k)]] = x_restricted[k];
  return out;
}

namespace detail {

Vector project_simplex(const Eigen::Ref<const Vector>& x) {
  const Index n = x.size();
  if (n == 0) throw InfeasibleRestriction("simplex restricted to an empty support is empty");
  std::vector<double> u(x.data(), x.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Index j = 0; j < n; ++j) {
    cumsum += u[static_cast<std::size_t>(j)];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - t > 0.0) theta = t;
  }
  return (x.array() - theta).max(0.0).matrix();
}

Vector project_l1_ball(const Eigen::Ref<const Vector>& x, double radius) {
  if (x.cwiseAbs().sum() <= radius) return x;
  std::vector<double> u(static_cast<std::size_t>(x.size()));
  for (Index i = 0; i < x.size(); ++i) u[static_cast<std::size_t>(i)] = std::abs(x[i]);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double t = (cumsum - radius) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i)
    out[i] = std::copysign(std::max(std::abs(x[i]) - theta, 0.0), x[i]);
  return out;
}

namespace {

// Solves w + lam * p * w^(p-1) = a on [0, a] for p > 1 (left side is increasing in w).
double shrink_coordinate(double a, double lam, double p) {
  if (a == 0.0) return 0.0;
  double lo = 0.0;
  double hi = a;
  double w = a / (1.0 + lam * p * std::pow(a, p - 2.0) + 1e-300);
  w = std::clamp(w, 0.0, a);
  for (int it = 0; it < 100; ++it) {
    const double phi = w + lam * p * std::pow(w, p - 1.0) - a;
    if (phi > 0.0) hi = w; else lo = w;
    const double dphi = 1.0 + lam * p * (p - 1.0) * std::pow(w, p - 2.0);
    double next = w - phi / dphi;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - w) <= 1e-17 * a || hi - lo <= 1e-17 * a) {
      w = next;
      break;
    }
    w = next;
  }
  return w;
}

}  // namespace

Vector project_lp_ball(const Eigen::Ref<const Vector>& x, double p, double radius) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp ball projection requires p >= 1");
  if (x.size() == 0) return x;
  if (std::isinf(p)) return x.cwiseMax(-radius).cwiseMin(radius);
  if (p == 1.0) return project_l1_ball(x, radius);
  if (p == 2.0) {
    const double norm = x.norm();
    return norm <= radius ? Vector(x) : Vector(x * (radius / norm));
  }
  const Vector a = x.cwiseAbs();
  const double target = std::pow(radius, p);
  if (a.array().pow(p).sum() <= target) return x;

  auto mass = [&](double lam) {
    double total = 0.0;
    for (Index i = 0; i < a.size(); ++i) total += std::pow(shrink_coordinate(a[i], lam, p), p);
    return total;
  };
  // Bisection on the multiplier of the norm constraint.
  double lo = 0.0;
  double hi = 1.0;
  while (mass(hi) > target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mass(mid) > target) lo = mid; else hi = mid;
  }
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) out[i] = std::copysign(shrink_coordinate(a[i], hi, p), x[i]);
  return out;
}

}  // namespace detail

Vector project_convex(const Eigen::Ref<const Vector>& x, const SetDescriptor& set) {
  switch (set.kind()) {
    case SetKind::FullSpace:
      return x;
    case SetKind::NonnegOrthant:
      return x.cwiseMax(0.0);
    case SetKind::Simplex:
      return detail::project_simplex(x);
    case SetKind::UnitSum: {
      if (x.size() == 0) throw InfeasibleRestriction("unit-sum set restricted to an empty support is empty");
      return (x.array() + (1.0 - x.sum()) / static_cast<double>(x.size())).matrix();
    }
    case SetKind::LpBall:
      return detail::project_lp_ball(x, set.p(), set.radius());
    case SetKind::Box:
      return x.cwiseMax(set.lower()).cwiseMin(set.upper());
  }
  return x;
}

Vector project_convex_restricted(const Eigen::Ref<const Vector>& x_restricted,
                                 const SetDescriptor& set, const SupportSet& support) {
  if (x_restricted.size() != support.size())
    throw std::invalid_argument("restricted vector does not match the support size");
  if (set.kind() == SetKind::Box && (set.lower() > 0.0 || set.upper() < 0.0) &&
      support.size() < support.n)
    throw InfeasibleRestriction("box excludes zero, so off-support coordinates are infeasible");
  return project_convex(x_restricted, set);
}

namespace {

std::vector<Index> all_indices(Index n) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  return idx;
}

// Exchange argument: positive entries of the projection sit on the largest values of x,
// negative entries on the smallest, so the support is a top block plus a bottom block.
SupportSet unit_sum_support(const Eigen::Ref<const Vector>& x, Index s) {
  const Index n = x.size();
  const auto order = SortingPermutation::of(x).order;
  std::vector<double> top_sum(static_cast<std::size_t>(s + 1), 0.0), top_sq(top_sum);
  std::vector<double> bot_sum(top_sum), bot_sq(top_sum);
  for (Index k = 0; k < s; ++k) {
    const double a = x[order[static_cast<std::size_t>(k)]];
    const double b = x[order[static_cast<std::size_t>(n - 1 - k)]];
    top_sum[k + 1] = top_sum[k] + a;
    top_sq[k + 1] = top_sq[k] + a * a;
    bot_sum[k + 1] = bot_sum[k] + b;
    bot_sq[k + 1] = bot_sq[k] + b * b;
  }
  Index best_top = s;
  double best_gain = -kInf;
  for (Index k = s; k >= 0; --k) {
    const double sum = top_sum[k] + bot_sum[s - k];
    const double sq = top_sq[k] + bot_sq[s - k];
    const double shift = 1.0 - sum;
    const double gain = sq - shift * shift / static_cast<double>(s);
    if (gain > best_gain) {
      best_gain = gain;
      best_top = k;
    }
  }
  std::vector<Index> idx(order.begin(), order.begin() + best_top);
  idx.insert(idx.end(), order.end() - (s - best_top), order.end());
  return SupportSet(std::move(idx), n);
}

}  // namespace

Vector sparse_project(const Eigen::Ref<const Vector>& x, const SetDescriptor& set, Index s) {
  const Index n = x.size();
  if (s < 1 || s > n) throw std::invalid_argument("sparse_project requires 1 <= s <= n");
  SupportSet support;
  switch (set.kind()) {
    case SetKind::UnitSum:
      support = unit_sum_support(x, s);
      break;
    case SetKind::Box: {
      if (set.lower() > 0.0 || set.upper() < 0.0)
        throw InfeasibleRestriction("sparse projection onto a box requires lower <= 0 <= upper");
      const Vector clipped = x.cwiseMax(set.lower()).cwiseMin(set.upper());
      const Vector gain = (x.array().square() - (x - clipped).array().square()).matrix();
      support = SupportSet(top_k(gain, all_indices(n), s), n);
      break;
    }
    default:
      support = SupportSet(top_k(symmetry_scores(x, set.symmetry()), all_indices(n), s), n);
      break;
  }
  return embed(project_convex_restricted(restrict_to(x, support), set, support), support);
}

SupportSet select_super_support(const Eigen::Ref<const Vector>& y,
                                const Eigen::Ref<const Vector>& score, Index s, Symmetry sym) {
  const Index n = y.size();
  if (score.size() != n) throw std::invalid_argument("score has wrong dimension");
  const SupportSet active = SupportSet::of_nonzeros(y);
  if (active.size() > s) throw std::invalid_argument("select_super_support: y has more than s nonzeros");
  const Vector priority = symmetry_scores(-score, sym);
  const SupportSet inactive = active.complement();

  if (active.size() < s) {
    std::vector<Index> idx = active.indices;
    const auto extra = top_k(priority, inactive.indices, s - active.size());
    idx.insert(idx.end(), extra.begin(), extra.end());
    return SupportSet(std::move(idx), n);
  }

  // Full support: swap weakest members for stronger outsiders.
  std::vector<Index> outside = top_k(priority, inactive.indices, static_cast<Index>(inactive.indices.size()));
  std::vector<Index> inside = active.indices;
  std::sort(inside.begin(), inside.end(), [&](Index a, Index b) {
    return priority[a] < priority[b] || (priority[a] == priority[b] && a < b);
  });
  std::vector<Index> chosen = active.indices;
  for (std::size_t k = 0; k < std::min(outside.size(), inside.size()); ++k) {
    if (!(priority[outside[k]] > priority[inside[k]])) break;
    std::replace(chosen.begin(), chosen.end(), inside[k], outside[k]);
  }
  return SupportSet(std::move(chosen), n);
}

}  // namespace sparse_pd
