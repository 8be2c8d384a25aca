#include "sparse_pd/bench.hpp"
#include "sparse_pd/sets.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <mutex>
#include <numbers>

#ifndef SPARSE_PD_DATA_DIR
#define SPARSE_PD_DATA_DIR "data"
#endif

namespace sparse_pd {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Index Rng::uniform_int(Index lo, Index hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  return std::min(hi, lo + static_cast<Index>(std::floor(uniform() * span)));
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector Rng::normal_vector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Matrix Rng::normal_matrix(Index rows, Index cols) {
  Matrix M(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) M(i, j) = normal();
  return M;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t index) {
  return splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1));
}

Index sparsity_level(Index n, Rng& rng) {
  const double u = rng.uniform();
  Index s = 0;
  if (u < 1.0 / 3.0)
    s = static_cast<Index>(std::floor(0.15 * static_cast<double>(n)));
  else if (u < 2.0 / 3.0)
    s = static_cast<Index>(std::floor(0.25 * static_cast<double>(n)));
  else
    s = static_cast<Index>(std::floor((rng.uniform() < 0.5 ? 0.50 : 0.75) * static_cast<double>(n)));
  return std::min(std::max<Index>(2, s), n - 1);
}

Matrix toeplitz_covariance(Index n) {
  Matrix Q(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) Q(i, j) = std::pow(0.9, static_cast<double>(std::abs(i - j)));
  return Q;
}

namespace {

struct QuadraticData {
  Matrix Q;
  Vector c;
};
struct LinearData {
  Matrix A;
  Vector b;
};
struct CovarianceData {
  Matrix Sigma;
};

void standardize_columns(Matrix& A) {
  const auto m = static_cast<double>(A.rows());
  for (Index k = 0; k < A.cols(); ++k) {
    auto col = A.col(k);
    col.array() -= col.mean();
    const double var = col.squaredNorm() / m;
    if (var < 1e-12)
      col.setZero();
    else
      col /= std::sqrt(var);
  }
}

std::vector<Index> random_subset(Index population, Index k, Rng& rng) {
  std::vector<Index> idx(static_cast<std::size_t>(population));
  for (Index i = 0; i < population; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < k; ++i) {
    const Index j = rng.uniform_int(i, population - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

const Dataset& cached_dataset(DatasetName name, const std::string& data_dir) {
  static std::mutex mutex;
  static std::map<std::string, Dataset> cache;
  std::string path = dataset_path(name, data_dir);
  if (!std::filesystem::exists(path)) path = dataset_path(name, SPARSE_PD_DATA_DIR);
  std::lock_guard lock(mutex);
  auto it = cache.find(path);
  if (it == cache.end()) it = cache.emplace(path, load_dataset(name, path)).first;
  return it->second;
}

/// m sampled rows of the dataset, widened to n columns: the original features first,
/// then noisy random combinations of them; every column standardized.
Matrix expand_features(const Dataset& data, Index m, Index n, Rng& rng, std::vector<Index>& rows) {
  const Index N = data.A.rows();
  const Index p = data.A.cols();
  if (m <= N) {
    rows = random_subset(N, m, rng);
  } else {
    rows.resize(static_cast<std::size_t>(m));
    for (auto& r : rows) r = rng.uniform_int(0, N - 1);
  }
  Matrix X(m, p);
  for (Index i = 0; i < m; ++i) X.row(i) = data.A.row(rows[static_cast<std::size_t>(i)]);
  Matrix A(m, n);
  for (Index k = 0; k < n; ++k) {
    if (k < p)
      A.col(k) = X.col(k);
    else
      A.col(k) = X * rng.normal_vector(p) + 0.1 * rng.normal_vector(m);
  }
  standardize_columns(A);
  return A;
}

struct RawProblem {
  SetDescriptor set = SetDescriptor::full_space();
  ObjectiveFn f;
  GradientFn g;
  std::shared_ptr<const void> data;
};

RawProblem build_family(Family family, Index n, Index m, Index s, Rng& rng, const std::string& data_dir) {
  RawProblem raw;
  switch (family) {
    case Family::SparseQuadratic: {
      auto d = std::make_shared<QuadraticData>();
      const Matrix B = rng.normal_matrix(n, n);
      d->Q = B.transpose() * B / static_cast<double>(n);
      d->Q.diagonal().array() += 1e-3;
      d->c = rng.normal_vector(n);
      raw.f = [d](const Vector& x) { return 0.5 * x.dot(d->Q * x) + d->c.dot(x); };
      raw.g = [d](const Vector& x) -> Vector { return d->Q * x + d->c; };
      raw.data = d;
      break;
    }
    case Family::Portfolio: {
      auto d = std::make_shared<QuadraticData>();
      d->Q = toeplitz_covariance(n);
      d->c.resize(n);
      for (Index i = 0; i < n; ++i) d->c[i] = 0.05 + 0.1 * rng.uniform();
      raw.set = SetDescriptor::simplex();
      raw.f = [d](const Vector& x) { return 0.5 * x.dot(d->Q * x) - d->c.dot(x); };
      raw.g = [d](const Vector& x) -> Vector { return d->Q * x - d->c; };
      raw.data = d;
      break;
    }
    case Family::RegressionBoston:
    case Family::SparseControl: {
      auto d = std::make_shared<LinearData>();
      if (family == Family::RegressionBoston) {
        const Dataset& data = cached_dataset(DatasetName::Boston, data_dir);
        std::vector<Index> rows;
        d->A = expand_features(data, m, n, rng, rows);
        d->b.resize(m);
        for (Index i = 0; i < m; ++i) d->b[i] = data.b[rows[static_cast<std::size_t>(i)]];
        d->b.array() -= d->b.mean();
        const double sd = std::sqrt(d->b.squaredNorm() / static_cast<double>(m));
        if (sd > 1e-6) d->b /= sd;
      } else {
        // Sampled impulse response of a damped oscillator driven by n input pulses.
        const double decay = 0.85 + 0.1 * rng.uniform();
        const double freq = 0.1 + 0.4 * rng.uniform();
        d->A = Matrix::Zero(m, n);
        for (Index i = 0; i < m; ++i) {
          const Index t = ((i + 1) * n) / m - 1;
          for (Index k = 0; k <= t; ++k) {
            const auto lag = static_cast<double>(t - k);
            d->A(i, k) = std::pow(decay, lag) * std::cos(freq * lag);
          }
        }
        d->b.resize(m);
        for (Index i = 0; i < m; ++i)
          d->b[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i + 1) / static_cast<double>(m));
      }
      raw.f = [d](const Vector& x) { return 0.5 * (d->A * x - d->b).squaredNorm(); };
      raw.g = [d](const Vector& x) -> Vector { return d->A.transpose() * (d->A * x - d->b); };
      raw.data = d;
      break;
    }
    case Family::LogisticIris: {
      auto d = std::make_shared<LinearData>();
      const Dataset& data = cached_dataset(DatasetName::Iris, data_dir);
      std::vector<Index> rows;
      d->A = expand_features(data, m, n, rng, rows);
      d->b.resize(m);
      for (Index i = 0; i < m; ++i) d->b[i] = data.b[rows[static_cast<std::size_t>(i)]];
      raw.f = [d](const Vector& x) {
        const Vector t = d->b.cwiseProduct(d->A * x);
        double sum = 0.0;
        for (Index i = 0; i < t.size(); ++i) sum += std::max(-t[i], 0.0) + std::log1p(std::exp(-std::abs(t[i])));
        return sum / static_cast<double>(t.size());
      };
      raw.g = [d](const Vector& x) -> Vector {
        const Vector t = d->b.cwiseProduct(d->A * x);
        Vector w(t.size());
        for (Index i = 0; i < t.size(); ++i) {
          // sigma(-t) computed without overflow
          const double e = std::exp(-std::abs(t[i]));
          w[i] = -d->b[i] * (t[i] >= 0.0 ? e / (1.0 + e) : 1.0 / (1.0 + e));
        }
        return d->A.transpose() * w / static_cast<double>(t.size());
      };
      raw.data = d;
      break;
    }
    case Family::PcaWine: {
      auto d = std::make_shared<CovarianceData>();
      const Dataset& data = cached_dataset(DatasetName::Wine, data_dir);
      std::vector<Index> rows;
      const Matrix A = expand_features(data, m, n, rng, rows);
      d->Sigma = A.transpose() * A / static_cast<double>(m);
      raw.set = SetDescriptor::lp_ball(2.0, 1.0);
      raw.f = [d](const Vector& x) { return -x.dot(d->Sigma * x); };
      raw.g = [d](const Vector& x) -> Vector { return -2.0 * (d->Sigma * x); };
      raw.data = d;
      break;
    }
    case Family::DisjunctiveQuadratic: {
      auto d = std::make_shared<LinearData>();
      d->A = rng.normal_matrix((n + 1) / 2, n);
      raw.f = [d](const Vector& x) { return 0.5 * (d->A * x).squaredNorm(); };
      raw.g = [d](const Vector& x) -> Vector { return d->A.transpose() * (d->A * x); };
      raw.data = d;
      break;
    }
    case Family::PhaseRetrieval: {
      auto d = std::make_shared<LinearData>();
      d->A = rng.normal_matrix(m, n);
      Vector x_true = Vector::Zero(n);
      for (Index i : random_subset(n, s, rng)) x_true[i] = rng.normal();
      d->b = (d->A * x_true).cwiseAbs();
      raw.f = [d](const Vector& x) { return 0.5 * ((d->A * x).cwiseAbs() - d->b).squaredNorm(); };
      raw.g = [d](const Vector& x) -> Vector {
        const Vector Ax = d->A * x;
        Vector r(Ax.size());
        for (Index i = 0; i < Ax.size(); ++i) {
          const double sign = Ax[i] >= 0.0 ? 1.0 : -1.0;
          r[i] = (std::abs(Ax[i]) - d->b[i]) * sign;
        }
        return d->A.transpose() * r;
      };
      raw.data = d;
      break;
    }
    case Family::Custom:
      throw std::invalid_argument("the custom family has no generator");
  }
  return raw;
}

}  // namespace

ProblemInstance generate_instance(std::uint64_t seed, Family family, Index n, Index s,
                                  const std::string& data_dir) {
  if (n < 3) throw std::invalid_argument("generate_instance: n must be at least 3");
  if (s < 1 || s >= n) throw std::invalid_argument("generate_instance: need 1 <= s < n");
  Rng rng(splitmix64(seed ^ 0x5DEECE66DULL));
  const Index m = std::max<Index>(2, n / 2);
  RawProblem raw = build_family(family, n, m, s, rng, data_dir);

  ProblemInstance p;
  p.id = std::string(to_string(family)) + "@" + std::to_string(seed);
  p.family = family;
  p.n = n;
  p.m = m;
  p.s = s;
  p.set = raw.set;
  p.seed = seed;
  p.x0 = sparse_project(rng.normal_vector(n), p.set, s);
  const double scale = std::max(1.0, raw.g(p.x0).cwiseAbs().maxCoeff());
  p.scale = scale;
  p.f = [f = raw.f, scale](const Vector& x) { return f(x) / scale; };
  p.g = [g = raw.g, scale](const Vector& x) -> Vector { return g(x) / scale; };
  p.data = raw.data;
  p.validate();
  return p;
}

ProblemInstance generate_instance(std::uint64_t seed, Family family, const std::string& data_dir) {
  Rng rng(seed);
  const Index n = rng.uniform_int(10, 500);
  const Index s = sparsity_level(n, rng);
  return generate_instance(seed, family, n, s, data_dir);
}

std::vector<ProblemInstance> generate_suite(std::uint64_t master_seed, std::size_t count,
                                            const std::string& data_dir) {
  const auto& families = benchmark_families();
  std::vector<ProblemInstance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(generate_instance(instance_seed(master_seed, i), families[i % families.size()], data_dir));
  return out;
}

}  // namespace sparse_pd
