#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmlbench/types.hpp"

// Classical single-head, single-block Transformer. Rows of S are tokens.
// Q = S Wq, K = S Wk, V = S Wv. M1 is d' x d and M2 is d x d' (column
// convention), so the FFN is M2 * act(M1 x + b1) + b2.

namespace qmlbench {

struct TransformerWeights {
  RMat Wq, Wk, Wv;
  RMat M1, M2;
  RVec b1, b2;
  double gamma = 1.0, beta = 0.0;

  int d() const { return (int)Wq.rows(); }
  int d_ff() const { return (int)M1.rows(); }
  void validate() const;
};

RMat attention_weights(const RMat& S, const TransformerWeights& w, double alpha0, bool masked);
RMat classical_attention(const RMat& S, const TransformerWeights& w, double alpha0, bool masked);

// gamma (g + s - mean) / sigma + beta with the population sigma
RVec layer_norm_residual(const RVec& g, const RVec& s, double gamma, double beta);
RVec layer_norm(const RVec& x, double gamma, double beta);

double gelu_exact(double x);
RVec ffn(const RVec& x, const TransformerWeights& w);

// LN(FFN(LN(Attention(S, j)))) for 0-based row j
RVec classical_transformer_row(const RMat& S, int j, const TransformerWeights& w, double alpha0, bool masked);

// the three-token toy instance with 4-dimensional embeddings
struct ToyInstance {
  RMat S;
  TransformerWeights w;
};
ToyInstance toy_cat_sleeps();

// ---- norm scaling ----
enum class RowSampler { unit, gaussian, orthonormal, repeated };
RowSampler parse_row_sampler(const std::string& s);
std::string to_string(RowSampler s);

struct NormRow {
  long long ell = 0;
  double spectral = 0, frobenius = 0;
  double frobenius_dev = 0;  // max |‖S‖_F - sqrt(ell)| over trials, unit sampler only
};
struct NormStudy {
  RowSampler sampler = RowSampler::unit;
  int d = 0;
  std::vector<NormRow> rows;
  double slope_spectral = 0, slope_frobenius = 0;
  bool worst_case = false;  // spectral norm reached sqrt(ell), the rank-one extreme
};
NormStudy norm_scaling_study(RowSampler sampler, const std::vector<long long>& ells, int d, int trials,
                             std::uint64_t seed);

}  // namespace qmlbench
