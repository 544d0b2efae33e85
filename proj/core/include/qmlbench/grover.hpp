#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qmlbench/kernel.hpp"

namespace qmlbench {

struct SearchProblem {
  int n = 0;  // d = 2^n
  std::vector<char> marked;
  long long M = 0;

  SearchProblem() = default;
  SearchProblem(int n, const std::function<bool(long long)>& f);
  long long dim() const { return 1LL << n; }
};

// diagonal +-1 oracle
void apply_oracle(const SearchProblem& p, Vec& amps);
// H^n U0 H^n with U0 = 2|0><0| - I, via the Walsh-Hadamard transform
void apply_diffusion(Vec& amps, int n);
void walsh_hadamard(Vec& amps, int n);

int grover_iterations(long long d, long long M);  // floor(pi/4 sqrt(d/M) - 1/2)

struct GroverResult {
  long long index = -1;
  int m = 0;
  double success_prob = 0;     // from the simulated state
  double success_closed = 0;   // sin^2((2m+1) theta)
  bool found = false;
};
GroverResult grover_search(const SearchProblem& p, Rng& rng);
// run exactly m iterations from the uniform state
Vec grover_state(const SearchProblem& p, int m);

struct AmplitudeStep {
  int k = 0;
  double alpha = 0, beta = 0;               // simulated <target|phi_k>, <other|phi_k>
  double alpha_closed = 0, beta_closed = 0;
};
std::vector<AmplitudeStep> grover_amplitude_trace(const SearchProblem& p, int m_max);

// ---- online quantum perceptron ----

struct QueryLedger {
  long long fw_quantum = 0;    // applications of F_w inside Grover iterations
  long long fw_classical = 0;  // classical evaluations of f(w, z)
  long long grover_runs = 0;
  long long updates = 0;
  std::vector<long long> per_phase;  // F_w or f_w count per outer h iteration
  std::vector<int> m_values;         // m of every executed Grover run
};

struct PerceptronRun {
  RVec w;
  QueryLedger ledger;
  bool separates = false;  // zero training error on return
};

// labels +-1, unit-norm rows, d must be a power of two
PerceptronRun quantum_perceptron_train(const Dataset& X, const std::vector<int>& y, double gamma, double epsilon,
                                       double c, std::uint64_t seed);
PerceptronRun classical_perceptron_sampling_baseline(const Dataset& X, const std::vector<int>& y, double gamma,
                                                     double epsilon, std::uint64_t seed);

struct ScalingRow {
  long long d = 0;
  double median_quantum = 0, median_classical = 0;
  double quantum_success = 0, classical_success = 0;
};
struct ScalingStudy {
  std::vector<ScalingRow> rows;
  double slope_quantum = 0, slope_classical = 0;
};
ScalingStudy perceptron_scaling_study(const std::vector<long long>& ds, int seeds, double gamma, double epsilon,
                                      double c, int dim, std::uint64_t seed);

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qmlbench
