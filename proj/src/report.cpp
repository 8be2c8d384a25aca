#include "sparse_pd/bench.hpp"
#include "sparse_pd/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace sparse_pd {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string eps_label(double eps) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.0e", eps);
  return buf;
}

template <class T>
std::vector<T> unique_in_order(const std::vector<RunRecord>& records, T RunRecord::*field) {
  std::vector<T> out;
  for (const auto& r : records)
    if (std::find(out.begin(), out.end(), r.*field) == out.end()) out.push_back(r.*field);
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string_view to_string(CostMeasure cost) { return cost == CostMeasure::Nf2g ? "nf2g" : "sec"; }

std::string_view to_string(Criterion criterion) {
  return criterion == Criterion::Objective ? "objective" : "strong";
}

double cost_to_solve(const RunRecord& record, CostMeasure cost, Criterion criterion, double eps,
                     double f_opt, std::int64_t nf2g_max, double sec_max) {
  if (record.termination == Termination::Failed) return kInf;
  for (const auto& tp : record.trace) {
    const double R = criterion == Criterion::Objective ? q_sol(tp.f_best, f_opt, record.f0) : tp.rgS_best;
    if (!(R <= eps)) continue;
    if (tp.nf2g() > nf2g_max || tp.sec > sec_max) return kInf;
    return cost == CostMeasure::Nf2g ? static_cast<double>(tp.nf2g()) : tp.sec;
  }
  return kInf;
}

std::vector<ProfileCurve> performance_profile(const std::vector<RunRecord>& records, CostMeasure cost,
                                              Criterion criterion, double eps, std::int64_t nf2g_max,
                                              double sec_max) {
  const auto problems = unique_in_order(records, &RunRecord::problem);
  const auto solvers = unique_in_order(records, &RunRecord::solver);
  std::map<std::string, double> f_opt;
  for (const auto& r : records) {
    auto [it, inserted] = f_opt.try_emplace(r.problem, r.f_best);
    if (!inserted) it->second = std::min(it->second, r.f_best);
  }

  const std::size_t P = problems.size();
  const std::size_t S = solvers.size();
  std::vector<std::vector<double>> c(S, std::vector<double>(P, kInf));
  for (const auto& r : records) {
    const auto s = static_cast<std::size_t>(std::find(solvers.begin(), solvers.end(), r.solver) - solvers.begin());
    const auto p = static_cast<std::size_t>(std::find(problems.begin(), problems.end(), r.problem) - problems.begin());
    c[s][p] = cost_to_solve(r, cost, criterion, eps, f_opt[r.problem], nf2g_max, sec_max);
  }

  std::vector<ProfileCurve> curves;
  for (std::size_t s = 0; s < S; ++s) {
    std::vector<double> ratios;
    for (std::size_t p = 0; p < P; ++p) {
      if (!std::isfinite(c[s][p])) continue;
      double best = kInf;
      for (std::size_t t = 0; t < S; ++t) best = std::min(best, c[t][p]);
      ratios.push_back(best > 0.0 ? c[s][p] / best : (c[s][p] == 0.0 ? 1.0 : kInf));
    }
    std::sort(ratios.begin(), ratios.end());
    ProfileCurve curve;
    curve.solver = solvers[s];
    const double denom = P == 0 ? 1.0 : static_cast<double>(P);
    const auto at_one = std::upper_bound(ratios.begin(), ratios.end(), 1.0) - ratios.begin();
    curve.points.emplace_back(1.0, static_cast<double>(at_one) / denom);
    for (std::size_t k = static_cast<std::size_t>(at_one); k < ratios.size(); ++k) {
      if (!std::isfinite(ratios[k])) break;
      if (k + 1 < ratios.size() && ratios[k + 1] == ratios[k]) continue;
      curve.points.emplace_back(ratios[k], static_cast<double>(k + 1) / denom);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::string records_csv(const std::vector<RunRecord>& records, bool timing) {
  std::ostringstream out;
  out << "solver,problem,family,n,m,s,f_best,rgS,q,nf,ng,nf2g,sec,solved_q6,solved_q3,solved_s6,solved_s3,"
         "termination\n";
  for (const auto& r : records) {
    out << r.solver << ',' << r.problem << ',' << to_string(r.family) << ',' << r.n << ',' << r.m << ','
        << r.s << ',' << num(r.f_best) << ',' << num(r.rgS_best) << ',' << num(r.q) << ',' << r.nf << ','
        << r.ng << ',' << r.nf2g << ',' << num(timing ? r.wall_seconds : 0.0) << ',' << int(r.solved_q6)
        << ',' << int(r.solved_q3) << ',' << int(r.solved_s6) << ',' << int(r.solved_s3) << ','
        << to_string(r.termination) << '\n';
  }
  return out.str();
}

std::vector<ProfileSet> all_profiles(const std::vector<RunRecord>& records, const ReportOptions& options) {
  std::vector<RunRecord> view = records;
  if (!options.timing)
    for (auto& r : view) {
      r.wall_seconds = 0.0;
      for (auto& tp : r.trace) tp.sec = 0.0;
    }
  std::vector<ProfileSet> out;
  for (CostMeasure cost : {CostMeasure::Nf2g, CostMeasure::Sec})
    for (Criterion criterion : {Criterion::Objective, Criterion::Strong})
      for (double eps : options.eps)
        out.push_back({cost, criterion, eps,
                       performance_profile(view, cost, criterion, eps, options.nf2g_max, options.sec_max)});
  return out;
}

std::string profiles_csv(const std::vector<ProfileSet>& profiles) {
  std::ostringstream out;
  out << "cost,criterion,eps,solver,tau,rho\n";
  for (const auto& set : profiles)
    for (const auto& curve : set.curves)
      for (const auto& [tau, rho] : curve.points)
        out << to_string(set.cost) << ',' << to_string(set.criterion) << ',' << num(set.eps) << ','
            << curve.solver << ',' << num(tau) << ',' << num(rho) << '\n';
  return out.str();
}

std::string profile_svg(const ProfileSet& profile) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
  constexpr double W = 640, H = 420, left = 60, right = 150, top = 40, bottom = 50;
  const double pw = W - left - right;
  const double ph = H - top - bottom;

  double x_max = 1.0;
  for (const auto& c : profile.curves)
    for (const auto& pt : c.points) x_max = std::max(x_max, std::log2(pt.first));
  x_max *= 1.05;
  auto X = [&](double log_tau) { return left + pw * log_tau / x_max; };
  auto Y = [&](double rho) { return top + ph * (1.0 - rho); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << to_string(profile.cost)
      << ", " << to_string(profile.criterion) << ", eps=" << eps_label(profile.eps) << "</text>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
      << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double rho = 0.25 * k;
    out << "<text x=\"" << left - 8 << "\" y=\"" << Y(rho) + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(rho) << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 12
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">log2(tau)</text>\n";
  out << "<text x=\"" << left + pw << "\" y=\"" << top + ph + 16
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(x_max) << "</text>\n";

  std::size_t k = 0;
  for (const auto& c : profile.curves) {
    const char* color = colors[k % (sizeof colors / sizeof *colors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    double prev = 0.0;
    bool first = true;
    for (const auto& [tau, rho] : c.points) {
      const double x = X(std::log2(tau));
      if (!first) out << ' ' << num(x) << ',' << num(Y(prev));
      out << (first ? "" : " ") << num(x) << ',' << num(Y(rho));
      prev = rho;
      first = false;
    }
    out << ' ' << num(X(x_max)) << ',' << num(Y(prev)) << "\"/>\n";
    out << "<text x=\"" << left + pw + 12 << "\" y=\"" << top + 16 * static_cast<double>(k + 1)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">" << c.solver << "</text>\n";
    ++k;
  }
  out << "</svg>\n";
  return out.str();
}

void emit_report(const std::vector<RunRecord>& records, const std::string& out_dir,
                 const ReportOptions& options) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir + ": " + ec.message());
  write_file(dir / "records.csv", records_csv(records, options.timing));
  const auto profiles = all_profiles(records, options);
  write_file(dir / "profiles.csv", profiles_csv(profiles));
  for (const auto& p : profiles) {
    const std::string name = "profile_" + std::string(to_string(p.cost)) + "_" + std::string(to_string(p.criterion)) +
                             "_" + eps_label(p.eps) + ".svg";
    write_file(dir / name, profile_svg(p));
  }
}

}  // namespace sparse_pd
