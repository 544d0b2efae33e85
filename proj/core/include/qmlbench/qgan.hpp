#pragma once

#include <cstdint>
#include <vector>

#include "qmlbench/learners.hpp"

namespace qmlbench {

struct QganConfig {
  int T = 4;       // sub-generators (patches)
  int n = 5;       // qubits per sub-generator
  int n_anc = 1;   // trailing ancilla qubits, post-selected on |0>
  int layers = 6;
  double lr_g = 0.3, lr_d = 1e-2;
  int epochs = 2;
  int batch = 4;
  std::uint64_t seed = 0;
};

struct QganGenerator {
  int n = 0, n_anc = 0, layers = 0;
  ParamCircuit circuit;       // shared layout, RY(z) encoding is applied separately
  std::vector<RVec> params;   // one vector per patch, ordered (layer, qubit, rot angle)
  int patch_size() const { return 1 << (n - n_anc); }
  int pixels() const { return patch_size() * (int)params.size(); }
};

QganGenerator qgan_generator_init(const QganConfig& cfg, Rng& rng);

struct PatchProbs {
  RVec p;          // conditional probabilities given ancillas |0>, sums to 1
  double post = 0; // post-selection probability
};
PatchProbs qgan_patch_probs(const QganGenerator& g, int t, const RVec& z);
// d p / d theta (patch_size x params): shift rule on the numerators and the
// post-selection probability, joined by the quotient rule
RMat qgan_patch_jacobian(const QganGenerator& g, int t, const RVec& z);

// (p - min) / (max - min + 1e-8)
RVec minmax_rescale(const RVec& p);
RMat minmax_jacobian(const RVec& p);

// concatenated rescaled patches; raw receives the pre-rescale vectors if given
RVec qgan_generate(const QganGenerator& g, const RVec& z, std::vector<PatchProbs>* raw = nullptr);

struct QganStep {
  int epoch = 0;
  int step = 0;
  double loss_d = 0, loss_g = 0;
};

struct QganResult {
  QganGenerator gen;
  MLP disc;
  std::vector<QganStep> steps;
  TrainRecord record;  // train_loss holds generator loss, test_loss discriminator loss, per epoch
  long long resampled_latents = 0;
  double min_post = 1.0;
  double max_sum_error = 0;  // worst |sum p - 1| over generated patches
  double min_entry = 0;      // smallest raw probability seen
};

// images are flattened rows with pixel values already scaled to [0,1]
QganResult qgan_patch_train(const std::vector<RVec>& images, const QganConfig& cfg);

}  // namespace qmlbench
