#include "sparse_pd/problem.hpp"

#include <array>

namespace sparse_pd {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 9> kFamilyNames{{
    {Family::SparseQuadratic, "sparse_quadratic"},
    {Family::Portfolio, "portfolio"},
    {Family::RegressionBoston, "regression_boston"},
    {Family::LogisticIris, "logistic_iris"},
    {Family::PcaWine, "pca_wine"},
    {Family::DisjunctiveQuadratic, "disjunctive_quadratic"},
    {Family::PhaseRetrieval, "phase_retrieval"},
    {Family::SparseControl, "sparse_control"},
    {Family::Custom, "custom"},
}};

}  // namespace

std::string_view to_string(Family family) {
  for (const auto& [f, name] : kFamilyNames)
    if (f == family) return name;
  return "?";
}

Family parse_family(std::string_view text) {
  for (const auto& [f, name] : kFamilyNames)
    if (name == text) return f;
  throw std::invalid_argument("unknown problem family: " + std::string(text));
}

const std::array<Family, 8>& benchmark_families() {
  static const std::array<Family, 8> families{
      Family::SparseQuadratic, Family::Portfolio,          Family::RegressionBoston,
      Family::LogisticIris,    Family::PcaWine,            Family::DisjunctiveQuadratic,
      Family::PhaseRetrieval,  Family::SparseControl,
  };
  return families;
}

void ProblemInstance::validate() const {
  if (n <= 0) throw std::invalid_argument("problem: n must be positive");
  if (s < 1 || s >= n) throw std::invalid_argument("problem: need 1 <= s < n");
  if (!f || !g) throw std::invalid_argument("problem: missing objective or gradient");
  if (x0.size() != n) throw std::invalid_argument("problem: x0 has wrong dimension");
  if ((x0.array() != 0.0).count() > s) throw std::invalid_argument("problem: x0 is not s-sparse");
  if (!set.contains(x0)) throw std::invalid_argument("problem: x0 is not in C");
}

CountedObjective::CountedObjective(const ProblemInstance& problem, std::int64_t nf2g_max,
                                   double sec_max)
    : problem_(problem), nf2g_max_(nf2g_max), sec_max_(sec_max) {}

void CountedObjective::charge(std::int64_t cost) {
  if (counter_.nf + 2 * counter_.ng + cost > nf2g_max_) throw BudgetExhausted();
  if (clock_.seconds() > sec_max_) throw BudgetExhausted();
}

double CountedObjective::value(const Vector& x) {
  charge(1);
  ++counter_.nf;
  return problem_.f(x);
}

Vector CountedObjective::gradient(const Vector& x) {
  charge(2);
  ++counter_.ng;
  return problem_.g(x);
}

EvalCounter CountedObjective::counter() const {
  EvalCounter out = counter_;
  out.wall_seconds = clock_.seconds();
  return out;
}

}  // namespace sparse_pd
