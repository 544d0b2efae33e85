#pragma once

#include <istream>
#include <string>
#include <vector>

#include "qmlbench/kernel.hpp"

namespace qmlbench {

struct ParseError : ValidationError {
  using ValidationError::ValidationError;
};

// optdigits: 64 integer pixels 0..16 then the digit label; pixels are divided by 16.
// generic: any number of real features then an integer label.
enum class CsvSchema { optdigits, generic };
CsvSchema parse_csv_schema(const std::string& s);

struct LabeledData {
  Dataset X;
  std::vector<int> labels;
  int features() const { return X.empty() ? 0 : (int)X[0].size(); }
};

LabeledData parse_csv_dataset(std::istream& in, CsvSchema schema);
LabeledData load_csv_dataset(const std::string& path, CsvSchema schema);

// full-precision writers; generic datasets round-trip through load_csv_dataset
void write_csv_dataset(const std::string& path, const LabeledData& data);
void write_csv_matrix(const std::string& path, const RMat& m);
RMat read_csv_matrix(const std::string& path);

// rows with the given label, order kept
LabeledData filter_label(const LabeledData& d, int label);

}  // namespace qmlbench
