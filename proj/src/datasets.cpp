#include "sparse_pd/bench.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef SPARSE_PD_DATA_DIR
#define SPARSE_PD_DATA_DIR "data"
#endif

namespace sparse_pd {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool is_missing(std::string_view field) { return field.empty() || field == "?" || field == "NA"; }

}  // namespace

std::string_view to_string(DatasetName name) {
  switch (name) {
    case DatasetName::Iris: return "iris";
    case DatasetName::Wine: return "wine";
    case DatasetName::Boston: return "boston";
  }
  return "?";
}

std::string default_data_dir() {
  if (const char* env = std::getenv("SPARSE_PD_DATA"); env && *env) return env;
  return SPARSE_PD_DATA_DIR;
}

std::string dataset_path(DatasetName name, const std::string& data_dir) {
  return data_dir + "/" + std::string(to_string(name)) + ".csv";
}

Dataset parse_dataset_csv(std::string_view text, DatasetName name) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw std::runtime_error(std::string(to_string(name)) + ": empty dataset file");

  Dataset out;
  for (auto col : split(lines[0])) out.columns.emplace_back(col);
  const std::size_t width = out.columns.size();
  if (width < 2) throw std::runtime_error("row 1: need at least one feature and a target column");

  std::vector<std::vector<double>> rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (trim(lines[r]).empty()) continue;
    const auto fields = split(lines[r]);
    if (fields.size() != width) {
      std::ostringstream msg;
      msg << "row " << r + 1 << ": expected " << width << " columns, found " << fields.size();
      throw std::runtime_error(msg.str());
    }
    std::vector<double> values(width);
    bool missing = false;
    for (std::size_t c = 0; c < width; ++c) {
      if (is_missing(fields[c])) {
        missing = true;
        break;
      }
      const std::string field(fields[c]);
      char* end = nullptr;
      values[c] = std::strtod(field.c_str(), &end);
      if (end != field.c_str() + field.size() || !std::isfinite(values[c])) {
        std::ostringstream msg;
        msg << "row " << r + 1 << ", column " << c + 1 << " (" << out.columns[c] << "): cannot parse '" << field << "'";
        throw std::runtime_error(msg.str());
      }
    }
    if (!missing) rows.push_back(std::move(values));
  }
  if (rows.empty()) throw std::runtime_error(std::string(to_string(name)) + ": no complete data rows");

  const auto m = static_cast<Index>(rows.size());
  const auto p = static_cast<Index>(width - 1);
  out.A.resize(m, p);
  out.b.resize(m);
  for (Index i = 0; i < m; ++i) {
    for (Index k = 0; k < p; ++k) out.A(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    out.b[i] = rows[static_cast<std::size_t>(i)][width - 1];
  }
  for (Index k = 0; k < p; ++k) {
    auto col = out.A.col(k);
    const double mean = col.mean();
    col.array() -= mean;
    const double var = col.squaredNorm() / static_cast<double>(m);
    if (var < 1e-12)
      col.setZero();
    else
      col /= std::sqrt(var);
  }
  if (name == DatasetName::Iris)
    for (Index i = 0; i < m; ++i) out.b[i] = out.b[i] == 0.0 ? 1.0 : -1.0;
  return out;
}

Dataset load_dataset(DatasetName name, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset_csv(buf.str(), name);
}

}  // namespace sparse_pd
