#include <cstdio>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "qmlbench/dataset.hpp"

using namespace qmlbench;

TEST_CASE("optdigits row of zeros") {
  std::stringstream ss;
  for (int i = 0; i < 64; ++i) ss << "0,";
  ss << "5\n";
  const LabeledData d = parse_csv_dataset(ss, CsvSchema::optdigits);
  REQUIRE(d.X.size() == 1);
  CHECK(d.X[0].norm() == 0.0);
  CHECK(d.labels[0] == 5);
}

TEST_CASE("optdigits pixel range") {
  auto row = [](int px) {
    std::stringstream ss;
    for (int i = 0; i < 64; ++i) ss << (i ? "," : "") << px;
    ss << ",1\n";
    return ss.str();
  };
  std::stringstream ok(row(16)), bad(row(17));
  CHECK(parse_csv_dataset(ok, CsvSchema::optdigits).X[0](0) == 1.0);
  CHECK_THROWS_AS(parse_csv_dataset(bad, CsvSchema::optdigits), ParseError);
}

TEST_CASE("ragged row names the line") {
  std::stringstream ss("1,2,0\n3,4,1\n5,1\n");
  try {
    parse_csv_dataset(ss, CsvSchema::generic);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("generic CSV round trip") {
  LabeledData d;
  RVec a(2), b(2);
  a << 0.1, 1.0 / 3.0;
  b << -2.5, 1e-300;
  d.X = {a, b};
  d.labels = {0, 1};
  const auto path = (std::filesystem::temp_directory_path() / "qmlbench_rt.csv").string();
  write_csv_dataset(path, d);
  const LabeledData e = load_csv_dataset(path, CsvSchema::generic);
  std::remove(path.c_str());
  REQUIRE(e.X.size() == 2);
  CHECK(e.X[0] == a);
  CHECK(e.X[1] == b);
  CHECK(e.labels == d.labels);
}

TEST_CASE("label filter keeps order") {
  LabeledData d;
  for (int i = 0; i < 5; ++i) {
    d.X.push_back(RVec::Constant(1, i));
    d.labels.push_back(i % 2);
  }
  const LabeledData f = filter_label(d, 1);
  REQUIRE(f.X.size() == 2);
  CHECK(f.X[0](0) == 1.0);
  CHECK(f.X[1](0) == 3.0);
}
