#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "harness/commands.hpp"
#include "qmlbench/dataset.hpp"

using namespace qmlbench::harness;

namespace {
int run(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "qmlbench");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli((int)argv.size(), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::string tmp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }
}  // namespace

TEST_CASE("record round trip keeps 17 digits") {
  ResultRecord r;
  r.subcommand = "demo";
  r.config["seed"] = 3;
  r.metrics["x"] = 0.1;
  r.metrics["v"] = std::vector<double>{1.0 / 3.0, 2.0};
  const std::string path = tmp("qmlbench_record.json");
  persist_result(r, path);
  const ResultRecord back = load_result(path);
  std::remove(path.c_str());
  CHECK(back.metrics["x"].get<double>() == 0.1);
  CHECK(back.metrics["v"][0].get<double>() == 1.0 / 3.0);
  CHECK(to_json(back) == to_json(r));
  CHECK(dump(to_json(r)).find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("empty metrics still give valid JSON") {
  ResultRecord r;
  r.subcommand = "none";
  CHECK_NOTHROW(json::parse(dump(to_json(r))));
}

TEST_CASE("exit codes") {
  CHECK(run({}) == 64);
  CHECK(run({"grover", "--bogus"}) == 64);
  CHECK(run({"nosuch"}) == 64);
  CHECK(run({"grover", "--n", "40"}) == 2);
  CHECK(run({"simulate", "--circuit", "H 5"}) == 2);
  CHECK(run({"grover", "--n", "6", "--m", "1", "--seed", "7"}) == 0);
}

TEST_CASE("grover example") {
  std::string text;
  REQUIRE(run({"grover", "--n", "10", "--m", "1", "--seed", "7"}, &text) == 0);
  const json j = json::parse(text);
  CHECK(j["metrics"]["success_prob"].get<double>() >= 0.99);
  CHECK(j["config"]["n"] == 10);
}

TEST_CASE("identical seeds reproduce identical records") {
  std::string a, b;
  run({"measure", "--shots", "200", "--seed", "4"}, &a);
  run({"measure", "--shots", "200", "--seed", "4"}, &b);
  CHECK(a == b);
}

TEST_CASE("config file fills flags and loses to explicit flags") {
  const std::string cfg = tmp("qmlbench_cfg.txt");
  {
    std::ofstream f(cfg);
    f << "# grover settings\nn = 5\nseed = 9\n";
  }
  std::string text;
  REQUIRE(run({"grover", "--config", cfg, "--n", "4"}, &text) == 0);
  std::remove(cfg.c_str());
  const json j = json::parse(text);
  CHECK(j["config"]["n"] == 4);
  CHECK(j["config"]["seed"] == 9);
}

TEST_CASE("kernel example writes a symmetric matrix") {
  const std::string out = tmp("qmlbench_K.csv");
  REQUIRE(run({"kernel", "--data", std::string(QMLBENCH_TEST_FIXTURES) + "/optdigits_small.csv", "--map", "angleX",
               "--limit", "12", "--out", out}) == 0);
  const qmlbench::RMat K = qmlbench::read_csv_matrix(out);
  std::remove(out.c_str());
  CHECK(K.rows() == 12);
  CHECK((K - K.transpose()).norm() < 1e-12);
}

TEST_CASE("missing data file is a validation error") {
  CHECK(run({"kernel", "--data", "/nonexistent.csv"}) == 2);
}

TEST_CASE("acceptance core suite") {
  CHECK(run({"acceptance", "--suite", "core"}) == 0);
  CHECK(run({"acceptance", "--suite", "nope"}) == 2);
}
