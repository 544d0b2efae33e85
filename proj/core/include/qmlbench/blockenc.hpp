#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmlbench/poly.hpp"
#include "qmlbench/sim.hpp"

// Block encodings. Ancilla qubits are the leading (most significant) qubits,
// so the encoded block is the top-left 2^n x 2^n corner of the unitary.

namespace qmlbench {

struct Provenance {
  std::vector<std::string> ops;  // construction trace, oldest first
  int logical_anc = 0;           // ancillas the textbook circuit would use
  long long queries = 1;         // uses of the underlying input encodings
  double eps = 0.0;              // propagated approximation error (on the extract)
  std::map<std::string, double> notes;
};

struct BlockEncoding {
  Mat unitary;
  double alpha = 1.0;
  int anc = 0;  // physical ancillas in `unitary`
  int n = 0;    // system qubits
  Provenance prov;

  long long target_dim() const { return 1LL << n; }
  int total_qubits() const { return anc + n; }
};

struct StateEncoding {
  Mat unitary;
  double alpha = 1.0;
  int anc = 0;
  int n = 0;
  // alpha * (<0^a| (x) I) U |0^{a+n}>
  Vec target() const;
};

// encodings above this many qubits are compacted to one physical ancilla
int compaction_limit();
void set_compaction_limit(int qubits);

Mat extract(const BlockEncoding& be);
// raw top-left block without the alpha factor
Mat block(const BlockEncoding& be);
void check_block_encoding(const BlockEncoding& be, double tol = 1e-9);

// unitary whose first column is the unit vector v
Mat completion_with_column(const Vec& v);

BlockEncoding be_from_unitary(const Mat& u);
// one-ancilla unitary dilation of M / alpha (needs ||M|| <= alpha)
BlockEncoding be_from_matrix(const Mat& m, double alpha);
BlockEncoding be_from_matrix(const Mat& m);  // alpha = spectral norm
// re-dilate onto one physical ancilla, keeping provenance
BlockEncoding compact(const BlockEncoding& be);

BlockEncoding be_lcu(const std::vector<double>& coeffs, const std::vector<Mat>& unitaries);
BlockEncoding be_product(const BlockEncoding& a, const BlockEncoding& b);
BlockEncoding be_transpose(const BlockEncoding& a);
BlockEncoding be_linear_combination(const std::vector<BlockEncoding>& encs, const std::vector<cd>& x);
BlockEncoding be_hadamard_product(const BlockEncoding& a, const BlockEncoding& b);
BlockEncoding be_tensor_identity(const BlockEncoding& a, int extra_sys_qubits);

// Element-wise transform sum_{j>=1} c_j (A/alpha)^{oj} plus, when c_0 != 0,
// c_0 times the all-ones matrix (or only its row `row`).
BlockEncoding be_elementwise_poly(const BlockEncoding& a, const PolySpec& p,
                                  std::optional<int> row_restrict = std::nullopt);
// Same construction with a scalar function g, g(0) = 0, applied exactly.
// g_bound must be the l1 norm of g's Taylor coefficients (that is what makes
// ||g o (A/alpha)|| <= g_bound); `degree` is only used for the resource tally.
BlockEncoding be_elementwise_fn(const BlockEncoding& a, const std::function<cd(double)>& g, double g_bound, cd c0,
                                std::optional<int> row_restrict, int degree, const std::string& label);

BlockEncoding qsvt_apply(const BlockEncoding& a, const PolySpec& p);
BlockEncoding be_pseudo_inverse(const BlockEncoding& a, double delta, double eps);

StateEncoding state_encode(const Vec& x);
StateEncoding state_encode(const RVec& x);
BlockEncoding be_diag_from_state(const StateEncoding& se);
// diag(f(psi_k)) with |f| <= f_bound on the amplitudes' range
BlockEncoding be_diag_fn_from_state(const StateEncoding& se, const std::function<double(double)>& f, double f_bound,
                                    const std::string& label);

// (sqrt(2^n), 1)-encoding of the matrix with ones in row j and zeros elsewhere
BlockEncoding be_row_ones(int n, long long j);
// (1, 1)-encoding of a diagonal 0/1 projector
BlockEncoding be_diag_projector(const std::vector<int>& mask);

// apply U to |0^a>|x> and post-select the ancillas on 0: returns the (unnormalised) system vector
Vec apply_and_postselect(const BlockEncoding& be, const Vec& sys_in);

}  // namespace qmlbench
