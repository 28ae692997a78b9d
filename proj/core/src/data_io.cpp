#include "causal/data_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "causal/errors.hpp"

namespace causal {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (cell.empty() || end != begin + cell.size() || errno == ERANGE || !std::isfinite(v)) {
    throw InputError("csv: row " + std::to_string(row) + ", column " + std::to_string(col + 1) +
                     ": not a finite number: '" + cell + "'");
  }
  return v;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

DataTable read_csv(std::istream& in) {
  DataTable table;
  std::string line;
  while (std::getline(in, line) && blank(line)) {
  }
  if (blank(line)) throw InputError("csv: missing header row");
  table.columns = split(line);
  std::unordered_map<std::string, int> seen;
  for (const auto& c : table.columns) {
    if (c.empty()) throw InputError("csv: empty column name in header");
    if (!seen.emplace(c, 0).second) throw InputError("csv: duplicate column '" + c + "'");
  }
  const std::size_t width = table.columns.size();
  std::vector<double> cells;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    const auto parts = split(line);
    ++rows;
    if (parts.size() != width) {
      throw InputError("csv: row " + std::to_string(rows) + " has " + std::to_string(parts.size()) +
                       " fields, expected " + std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) cells.push_back(parse_cell(parts[c], rows, c));
  }
  table.values = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      cells.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
  return table;
}

DataTable load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open data file '" + path + "'");
  return read_csv(in);
}

void write_csv(std::ostream& out, const DataTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < table.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", table.values(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

Eigen::MatrixXd align_columns(const DataTable& table, const Pdag& g) {
  std::unordered_map<std::string, int> position;
  for (std::size_t c = 0; c < table.columns.size(); ++c) position[table.columns[c]] = static_cast<int>(c);
  std::vector<int> cols;
  for (const auto& label : g.labels()) {
    auto it = position.find(label);
    if (it == position.end()) throw InputError("data has no column for vertex '" + label + "'");
    cols.push_back(it->second);
  }
  return table.values(Eigen::all, cols);
}

nlohmann::json estimate_to_json(const EffectEstimate& est, const Pdag& g, std::optional<std::uint64_t> seed) {
  nlohmann::json j;
  const auto se = est.standard_errors();
  j["tau"] = nlohmann::json::object();
  j["se"] = nlohmann::json::object();
  for (std::size_t m = 0; m < est.treatment.size(); ++m) {
    const auto& label = g.label(est.treatment[m]);
    j["tau"][label] = est.tau(static_cast<Eigen::Index>(m));
    j["se"][label] = se(static_cast<Eigen::Index>(m));
  }
  j["treatment"] = nlohmann::json::array();
  for (Vertex a : est.treatment) j["treatment"].push_back(g.label(a));
  j["outcome"] = g.label(est.outcome);
  auto acov = nlohmann::json::array();
  for (Eigen::Index r = 0; r < est.acov.rows(); ++r) {
    for (Eigen::Index c = 0; c < est.acov.cols(); ++c) acov.push_back(est.acov(r, c));
  }
  j["acov"] = std::move(acov);
  if (est.ci) {
    nlohmann::json ci;
    ci["level"] = est.ci->level;
    for (std::size_t m = 0; m < est.treatment.size(); ++m) {
      const auto k = static_cast<Eigen::Index>(m);
      ci["intervals"][g.label(est.treatment[m])] = {est.ci->lower(k), est.ci->upper(k)};
    }
    ci["rejected"] = est.bootstrap_rejected;
    j["ci"] = std::move(ci);
  }
  j["method"] = to_string(est.method);
  j["n"] = est.n;
  if (seed) j["seed"] = *seed;
  return j;
}

}  // namespace causal
