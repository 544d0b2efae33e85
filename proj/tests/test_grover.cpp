#include "doctest.h"
#include "qmlbench/grover.hpp"
#include "qmlbench/learners.hpp"

using namespace qmlbench;

TEST_CASE("iteration count") {
  CHECK(grover_iterations(1024, 1) == 24);
  CHECK(grover_iterations(4, 1) == 1);
}

TEST_CASE("four items, one marked, one iteration finds it") {
  const SearchProblem p(2, [](long long x) { return x == 2; });
  const Vec s = grover_state(p, 1);
  CHECK(std::norm(s(2)) == doctest::Approx(1.0));
}

TEST_CASE("amplitudes follow the sine formula") {
  const SearchProblem p(6, [](long long x) { return x % 21 == 4; });
  for (auto& st : grover_amplitude_trace(p, 8)) {
    CHECK(st.alpha == doctest::Approx(st.alpha_closed).epsilon(1e-9));
    CHECK(st.beta == doctest::Approx(st.beta_closed).epsilon(1e-9));
  }
}

TEST_CASE("search success on 1024 items") {
  const SearchProblem p(10, [](long long x) { return x == 777; });
  Rng rng(7);
  const GroverResult r = grover_search(p, rng);
  CHECK(r.success_prob >= 0.99);
  CHECK(r.success_prob == doctest::Approx(r.success_closed).epsilon(1e-9));
}

TEST_CASE("log-log slope of a power law") {
  CHECK(loglog_slope({1, 2, 4, 8}, {3, 6 * std::sqrt(2.0) / 2, 6, 6 * std::sqrt(2.0)}) == doctest::Approx(0.5));
}

TEST_CASE("quantum perceptron separates a small dataset") {
  const MarginData md = synth_margin_dataset(64, 4, 0.3, 2);
  const PerceptronRun r = quantum_perceptron_train(md.X, md.y, 0.3, 0.1, 1.5, 9);
  CHECK(r.separates);
  CHECK(r.ledger.fw_quantum > 0);
}
