#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmlbench::harness {

struct Check {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string name;
  std::string suite;    // core, encodings, blockenc, kernel, learners, grover, qgan, transformer
  double budget = 0;    // seconds
  std::function<Check(const std::string& fixtures)> run;
};

struct CriterionResult {
  int id = 0;
  std::string name, suite, detail;
  bool pass = false;
  double seconds = 0, budget = 0;
};

const std::vector<Criterion>& criteria();

// suite "all" runs everything; `only` (ids) narrows further when non-empty
std::vector<CriterionResult> run_acceptance(const std::string& suite, const std::vector<int>& only,
                                            const std::string& fixtures, std::ostream& log);

}  // namespace qmlbench::harness
