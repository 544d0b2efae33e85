#include "qmlbench/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qmlbench {

CsvSchema parse_csv_schema(const std::string& s) {
  if (s == "optdigits") return CsvSchema::optdigits;
  if (s == "generic") return CsvSchema::generic;
  throw ArgumentError("unknown CSV schema '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double to_double(const std::string& s, long long line) {
  double v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParseError("line " + std::to_string(line) + ": '" + s + "' is not a number");
  return v;
}

int to_int(const std::string& s, long long line) {
  const double v = to_double(s, line);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ParseError("line " + std::to_string(line) + ": '" + s + "' is not an integer");
  return (int)v;
}

}  // namespace

LabeledData parse_csv_dataset(std::istream& in, CsvSchema schema) {
  LabeledData d;
  std::string line;
  long long lineno = 0;
  size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (width == 0) {
      width = cells.size();
      if (width < 2) throw ParseError("line " + std::to_string(lineno) + ": need at least one feature and a label");
      if (schema == CsvSchema::optdigits && width != 65)
        throw ParseError("line " + std::to_string(lineno) + ": optdigits rows have 64 pixels and a label");
    } else if (cells.size() != width) {
      throw ParseError("line " + std::to_string(lineno) + ": ragged row (" + std::to_string(cells.size()) +
                       " columns, expected " + std::to_string(width) + ")");
    }
    RVec x(width - 1);
    for (size_t k = 0; k + 1 < width; ++k) {
      if (schema == CsvSchema::optdigits) {
        const int px = to_int(cells[k], lineno);
        if (px < 0 || px > 16) throw ParseError("line " + std::to_string(lineno) + ": pixel outside 0..16");
        x(k) = px / 16.0;
      } else {
        x(k) = to_double(cells[k], lineno);
      }
    }
    d.X.push_back(std::move(x));
    d.labels.push_back(to_int(cells.back(), lineno));
  }
  return d;
}

LabeledData load_csv_dataset(const std::string& path, CsvSchema schema) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "'");
  return parse_csv_dataset(f, schema);
}

void write_csv_dataset(const std::string& path, const LabeledData& data) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << std::setprecision(17);
  for (size_t i = 0; i < data.X.size(); ++i) {
    for (Eigen::Index k = 0; k < data.X[i].size(); ++k) f << data.X[i](k) << ',';
    f << data.labels[i] << '\n';
  }
  if (!f) throw ValidationError("write to '" + path + "' failed");
}

void write_csv_matrix(const std::string& path, const RMat& m) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) f << (k ? "," : "") << m(i, k);
    f << '\n';
  }
  if (!f) throw ValidationError("write to '" + path + "' failed");
}

RMat read_csv_matrix(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  long long lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<double> r;
    for (auto& c : split(line)) r.push_back(to_double(c, lineno));
    if (!rows.empty() && r.size() != rows[0].size()) throw ParseError("line " + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(r));
  }
  RMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
  return m;
}

LabeledData filter_label(const LabeledData& d, int label) {
  LabeledData out;
  for (size_t i = 0; i < d.X.size(); ++i)
    if (d.labels[i] == label) {
      out.X.push_back(d.X[i]);
      out.labels.push_back(label);
    }
  return out;
}

}  // namespace qmlbench
