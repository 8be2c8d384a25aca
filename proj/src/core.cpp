#include "sparse_pd/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace sparse_pd {

SetDescriptor SetDescriptor::lp_ball(double p, double radius) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp ball requires p >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("lp ball requires radius > 0");
  SetDescriptor set(SetKind::LpBall);
  set.p_ = p;
  set.radius_ = radius;
  return set;
}

SetDescriptor SetDescriptor::box(double lower, double upper) {
  if (!(lower < upper)) throw std::invalid_argument("box requires lower < upper");
  SetDescriptor set(SetKind::Box);
  set.lower_ = lower;
  set.upper_ = upper;
  return set;
}

Symmetry SetDescriptor::symmetry() const {
  switch (kind_) {
    case SetKind::FullSpace:
    case SetKind::LpBall:
      return Symmetry::Type2;
    case SetKind::Box:
      return (lower_ < 0.0 && lower_ == -upper_) ? Symmetry::Type2 : Symmetry::NonnegType1;
    default:
      return Symmetry::NonnegType1;
  }
}

bool SetDescriptor::bounded() const {
  return kind_ == SetKind::Simplex || kind_ == SetKind::LpBall || kind_ == SetKind::Box;
}

double SetDescriptor::max_norm(Index n) const {
  switch (kind_) {
    case SetKind::Simplex:
      return 1.0;
    case SetKind::LpBall:
      // ||x||_2 <= n^{max(0, 1/2 - 1/p)} ||x||_p
      return radius_ * std::pow(static_cast<double>(n), std::max(0.0, 0.5 - 1.0 / p_));
    case SetKind::Box:
      return std::sqrt(static_cast<double>(n)) * std::max(std::abs(lower_), std::abs(upper_));
    default:
      return kInf;
  }
}

bool SetDescriptor::contains(const Eigen::Ref<const Vector>& x, double tol) const {
  if (!x.allFinite()) return false;
  switch (kind_) {
    case SetKind::FullSpace:
      return true;
    case SetKind::NonnegOrthant:
      return x.size() == 0 || x.minCoeff() >= -tol;
    case SetKind::Simplex:
      return x.size() > 0 && x.minCoeff() >= -tol && std::abs(x.sum() - 1.0) <= tol;
    case SetKind::UnitSum:
      return x.size() > 0 && std::abs(x.sum() - 1.0) <= tol;
    case SetKind::LpBall: {
      if (x.size() == 0) return true;
      double norm = std::isinf(p_) ? x.cwiseAbs().maxCoeff()
                    : p_ == 1.0    ? x.cwiseAbs().sum()
                    : p_ == 2.0    ? x.norm()
                                   : std::pow(x.cwiseAbs().array().pow(p_).sum(), 1.0 / p_);
      return norm <= radius_ + tol;
    }
    case SetKind::Box:
      return x.size() == 0 || (x.minCoeff() >= lower_ - tol && x.maxCoeff() <= upper_ + tol);
  }
  return false;
}

std::string SetDescriptor::to_string() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case SetKind::FullSpace: return "full";
    case SetKind::NonnegOrthant: return "orthant";
    case SetKind::Simplex: return "simplex";
    case SetKind::UnitSum: return "unitsum";
    case SetKind::LpBall:
      out << "lpball:";
      if (std::isinf(p_)) out << "inf"; else out << p_;
      out << ':' << radius_;
      return out.str();
    case SetKind::Box:
      out << "box:" << lower_ << ':' << upper_;
      return out.str();
  }
  return "?";
}

namespace {

double parse_double(std::string_view text) {
  std::string s(text);
  if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
  std::size_t used = 0;
  double value = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: " + s);
  return value;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

SetDescriptor SetDescriptor::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ':')) parts.push_back(trim(item));
  if (parts.empty()) throw std::invalid_argument("empty set descriptor");
  const std::string& head = parts[0];
  if (head == "full") return full_space();
  if (head == "orthant") return nonneg_orthant();
  if (head == "simplex") return simplex();
  if (head == "unitsum") return unit_sum();
  if (head == "lpball" && parts.size() == 3) return lp_ball(parse_double(parts[1]), parse_double(parts[2]));
  if (head == "box" && parts.size() == 3) return box(parse_double(parts[1]), parse_double(parts[2]));
  throw std::invalid_argument("unknown set descriptor: " + std::string(text));
}

Vector symmetry_scores(const Eigen::Ref<const Vector>& v, Symmetry sym) {
  return sym == Symmetry::Type2 ? Vector(v.cwiseAbs()) : Vector(v);
}

std::string_view to_string(HessianKind kind) {
  switch (kind) {
    case HessianKind::D: return "d";
    case HessianKind::LM1: return "lm1";
    case HessianKind::LM2: return "lm2";
    case HessianKind::LM3: return "lm3";
  }
  return "?";
}

HessianKind parse_hessian_kind(std::string_view text) {
  if (text == "d" || text == "D") return HessianKind::D;
  if (text == "lm1" || text == "LM1") return HessianKind::LM1;
  if (text == "lm2" || text == "LM2") return HessianKind::LM2;
  if (text == "lm3" || text == "LM3") return HessianKind::LM3;
  throw std::invalid_argument("unknown hessian kind: " + std::string(text));
}

void SolverConfig::validate() const {
  auto require = [](bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(std::string("invalid solver config: ") + what);
  };
  require(r > 1.0, "r > 1");
  require(rho_min > 0.0 && rho_min <= rho0 && rho0 <= rho_max, "0 < rho_min <= rho0 <= rho_max");
  require(tau > 0.0 && tau < 1.0, "tau in (0,1)");
  require(eps0 > 0.0 && eps_min > 0.0, "eps0, eps_min > 0");
  require(memory > 0, "memory > 0");
  require(c_hat > 0.0 && c_small > 0.0 && varrho > 0.0 && mu > 0.0, "c_hat, c_small, varrho, mu > 0");
  require(nf2g_max > 0, "nf2g_max > 0");
  require(sec_max > 0.0, "sec_max > 0");
  require(eps > 0.0, "eps > 0");
  require(bfs_max_iter > 0 && pss_max_iter > 0 && fista_max_iter > 0, "iteration caps > 0");
  require(lambda_min > 0.0 && lambda_min <= lambda_max, "0 < lambda_min <= lambda_max");
}

SolverConfig parse_config(std::string_view text) {
  SolverConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    auto num = [&] { return parse_double(value); };
    auto integer = [&] { return static_cast<std::int64_t>(std::llround(parse_double(value))); };
    if (key == "r") cfg.r = num();
    else if (key == "rho0") cfg.rho0 = num();
    else if (key == "rho_min") cfg.rho_min = num();
    else if (key == "rho_max") cfg.rho_max = num();
    else if (key == "tau") cfg.tau = num();
    else if (key == "eps0") cfg.eps0 = num();
    else if (key == "eps_min") cfg.eps_min = num();
    else if (key == "m" || key == "memory") cfg.memory = static_cast<int>(integer());
    else if (key == "c_hat") cfg.c_hat = num();
    else if (key == "c_small" || key == "c") cfg.c_small = num();
    else if (key == "mu") cfg.mu = num();
    else if (key == "varrho") cfg.varrho = num();
    else if (key == "nf2g_max") cfg.nf2g_max = integer();
    else if (key == "sec_max") cfg.sec_max = num();
    else if (key == "eps") cfg.eps = num();
    else if (key == "bfs_max_iter") cfg.bfs_max_iter = static_cast<int>(integer());
    else if (key == "pss_max_iter") cfg.pss_max_iter = static_cast<int>(integer());
    else if (key == "fista_max_iter") cfg.fista_max_iter = static_cast<int>(integer());
    else if (key == "lambda_min") cfg.lambda_min = num();
    else if (key == "lambda_max") cfg.lambda_max = num();
    else if (key == "hessian") cfg.hessian = parse_hessian_kind(value);
    else if (key == "linesearch") cfg.line_search = (value == "on" || value == "true" || value == "1");
    else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

SolverConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

Tolerances tolerance_schedule(std::int64_t k, double eps_min) {
  double value = std::max(eps_min, 0.1 * std::exp(-1e-3 * static_cast<double>(k)));
  return {value, value};
}

AssumptionReport validate_assumptions(double lambda_min, double lambda_max, double gamma,
                                      double rho_min, double zeta) {
  if (!(lambda_min > 0 && lambda_max > 0 && gamma > 0 && rho_min > 0 && zeta >= 1.0))
    throw std::invalid_argument("validate_assumptions: inputs must be positive and zeta >= 1");
  AssumptionReport report;
  const double denom = lambda_min + rho_min;
  report.theta_bar = (lambda_max + gamma) / denom;
  report.kappa_bar = std::max({1.0, (rho_min + gamma) / denom, (rho_min + gamma / zeta) / denom});
  report.ok = report.theta_bar < 1.0;
  if (report.ok) {
    report.c_min = report.kappa_bar / (1.0 - report.theta_bar);
    report.R_inf = report.kappa_bar * zeta / (1.0 - report.theta_bar);
  }
  return report;
}

}  // namespace sparse_pd
