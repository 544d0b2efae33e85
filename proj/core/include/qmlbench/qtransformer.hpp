#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qmlbench/blockenc.hpp"
#include "qmlbench/transformer.hpp"

// Block-encoding emulation of one Transformer row. Every stage produces a
// unit state plus the factors that turn it back into the unnormalised
// classical vector of that stage.

namespace qmlbench {

enum class QMode { exact, polynomial };
QMode parse_qmode(const std::string& s);
std::string to_string(QMode m);

struct RowState {
  RVec amps;     // unit vector
  double scale = 1.0;
  std::vector<std::pair<std::string, double>> factors;  // product == scale
  RVec unnormalized() const { return scale * amps; }
};

struct StageCost {
  std::string stage;
  long long queries = 0;  // input-encoding uses, from the construction trace
  int logical_anc = 0;
  double alpha = 0;
  int degree = 0;
  long long rounds = 0;  // amplitude amplification estimate, ceil(alpha)
};

struct QTransformerConfig {
  int j = 0;  // 0-based row
  bool masked = false;
  QMode mode = QMode::exact;
  double eps = 1e-6;
  // encoding factors; 0 means use the spectral norm
  double alpha_s = 0, alpha_w = 0, alpha_m = 0;
};

struct QTransformerResult {
  RowState softmax;    // sqrt of the softmax row, scale gives exp(A_j / (2 alpha0))
  RowState attention;  // G_j
  RowState layernorm;  // G_j + S_j minus its mean
  RowState ffn;        // FFN applied to the classical-equivalent LN output
  RowState output;     // final centred row, unit norm
  RVec classical;      // classical row at the same alpha0, l2-normalised
  double alpha0 = 0, alpha_s = 0, alpha_w = 0, alpha_m = 0;
  double cosine = 0;
  // max abs error of scale * amps against the classical stage vector
  double recon_softmax = 0, recon_attention = 0, recon_layernorm = 0, recon_ffn = 0;
  int degree_exp = 0, degree_gelu = 0;
  std::vector<StageCost> cost;
  long long construction_count = 0;  // sum of queries * rounds
};

// S is l x d with d a power of two; gamma = 1, beta = 0 is assumed for the comparison
QTransformerResult q_transformer_row(const RMat& S, const TransformerWeights& w, const QTransformerConfig& cfg);

}  // namespace qmlbench
