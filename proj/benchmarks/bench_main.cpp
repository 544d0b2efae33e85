#include <benchmark/benchmark.h>

#include "qmlbench/blockenc.hpp"
#include "qmlbench/grover.hpp"
#include "qmlbench/kernel.hpp"
#include "qmlbench/learners.hpp"
#include "qmlbench/qtransformer.hpp"

using namespace qmlbench;

static void BM_ApplyGate(benchmark::State& st) {
  const int n = (int)st.range(0);
  Rng rng(1);
  StateVector psi = random_state(n, rng);
  for (auto _ : st) {
    for (int q = 0; q < n; ++q) psi = apply_gate(psi, gates::H(), {q});
    benchmark::DoNotOptimize(psi.amps.data());
  }
}
BENCHMARK(BM_ApplyGate)->DenseRange(4, 12, 4);

static void BM_DensityChannel(benchmark::State& st) {
  const int n = (int)st.range(0);
  Rng rng(2);
  const DensityMatrix rho = random_density(n, rng);
  const QuantumChannel ch = channels::depolarizing(0.1, n);
  for (auto _ : st) benchmark::DoNotOptimize(apply_channel(rho, ch).m.data());
}
BENCHMARK(BM_DensityChannel)->DenseRange(1, 4, 1);

static void BM_KernelMatrix(benchmark::State& st) {
  Rng rng(3);
  Dataset X;
  for (int i = 0; i < st.range(0); ++i) {
    RVec x(4);
    for (int k = 0; k < 4; ++k) x(k) = rng.uniform(0, 3.14);
    X.push_back(x);
  }
  for (auto _ : st) benchmark::DoNotOptimize(kernel_matrix(X, FeatureMap::angleX).data());
}
BENCHMARK(BM_KernelMatrix)->Arg(32)->Arg(128);

static void BM_ParameterShift(benchmark::State& st) {
  const int n = (int)st.range(0);
  Rng rng(4);
  const ParamCircuit c = build_hec(n, 2);
  RVec th(c.num_params);
  for (Eigen::Index i = 0; i < th.size(); ++i) th(i) = rng.uniform(0, 6.28);
  const StateVector in = StateVector::zero(n);
  const Mat o = pauli_string(std::string(n, 'Z'));
  for (auto _ : st) benchmark::DoNotOptimize(parameter_shift_grad(c, th, in, o).data());
}
BENCHMARK(BM_ParameterShift)->DenseRange(2, 6, 2);

static void BM_GroverSearch(benchmark::State& st) {
  const SearchProblem p((int)st.range(0), [](long long x) { return x == 5; });
  Rng rng(5);
  for (auto _ : st) benchmark::DoNotOptimize(grover_search(p, rng).success_prob);
}
BENCHMARK(BM_GroverSearch)->DenseRange(6, 12, 3);

static void BM_QuantumTransformerRow(benchmark::State& st) {
  const ToyInstance t = toy_cat_sleeps();
  QTransformerConfig cfg;
  cfg.mode = st.range(0) ? QMode::polynomial : QMode::exact;
  for (auto _ : st) benchmark::DoNotOptimize(q_transformer_row(t.S, t.w, cfg).cosine);
}
BENCHMARK(BM_QuantumTransformerRow)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
