#include <iostream>

#include "harness/acceptance.hpp"

// runs every criterion; argv[1] optionally names a suite
int main(int argc, char** argv) {
  const std::string suite = argc > 1 ? argv[1] : "all";
  const auto res = qmlbench::harness::run_acceptance(suite, {}, QMLBENCH_TEST_FIXTURES, std::cout);
  int failed = 0;
  for (auto& r : res) failed += !r.pass;
  std::cout << res.size() - failed << "/" << res.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
