#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmlbench/rng.hpp"
#include "qmlbench/types.hpp"

// Dense simulator. Qubit 0 is the leftmost tensor factor, i.e. the most
// significant bit of a basis label: |q0 q1 ... q_{n-1}>.

namespace qmlbench {

int qubit_cap();
void set_qubit_cap(int cap);
void check_capacity(int n);

struct StateVector {
  Vec amps;
  int n = 0;

  StateVector() = default;
  // validates length and norm
  explicit StateVector(Vec a, double tol = 1e-10);

  static StateVector basis(int n, long long index);
  static StateVector zero(int n) { return basis(n, 0); }
  long long dim() const { return amps.size(); }
};

struct DensityMatrix {
  Mat m;
  int n = 0;

  DensityMatrix() = default;
  explicit DensityMatrix(Mat rho, double tol = 1e-10);
  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n);
  long long dim() const { return m.rows(); }
  // n == 0 means the 1x1 scalar left by tracing everything out
  bool is_scalar() const { return n == 0; }
};

struct Gate {
  Mat m;
  int arity = 1;
  std::string label;
  std::optional<double> param;
};

struct QuantumChannel {
  std::vector<Mat> kraus;
  int n = 0;

  QuantumChannel() = default;
  explicit QuantumChannel(std::vector<Mat> ops, double tol = 1e-9);
};

struct PauliTerm {
  double coeff = 0.0;
  std::string pauli;  // letters from IXYZ, position i acts on qubit i
};

struct Observable {
  Mat m;
  std::optional<std::vector<PauliTerm>> terms;
  int n = 0;

  Observable() = default;
  explicit Observable(Mat h, double tol = 1e-10);
  static Observable from_terms(std::vector<PauliTerm> terms);
};

namespace gates {
Gate I1();
Gate X();
Gate Y();
Gate Z();
Gate H();
Gate S();
Gate Sdg();
Gate T();
Gate RX(double t);
Gate RY(double t);
Gate RZ(double t);
// Rot(phi, theta, omega) = RZ(omega) RY(theta) RZ(phi)
Gate Rot(double phi, double theta, double omega);
Gate CNOT();
Gate CZ();
Gate SWAP();
Gate from_matrix(Mat u, std::string label = "U", double tol = 1e-10);
}  // namespace gates

Mat pauli(char p);
Mat pauli_string(const std::string& s);
bool is_valid_pauli(const std::string& s);
// all 4^n strings in lexicographic IXYZ order
std::vector<std::string> all_pauli_strings(int n);

Mat identity(long long dim);
bool is_unitary(const Mat& u, double tol = 1e-10);
bool is_hermitian(const Mat& h, double tol = 1e-10);

// tensor products (Kronecker)
Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);
StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
Mat tensor(const Mat& a, const Mat& b);

// The canonical embedding: lift a 2^k operator acting on `targets` (in the
// order given, targets[0] is the operator's most significant qubit) to n qubits.
Mat embed(const Mat& op, const std::vector<int>& targets, int n);
void apply_inplace(Vec& amps, int n, const Mat& op, const std::vector<int>& targets);

StateVector apply_gate(const StateVector& psi, const Gate& g, const std::vector<int>& targets);
DensityMatrix apply_gate(const DensityMatrix& rho, const Gate& g, const std::vector<int>& targets);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Mat& u);

namespace channels {
// N_p(rho) = (1-p) rho + p I / 2^n, Kraus form over the n-qubit Pauli group
QuantumChannel depolarizing(double p, int n = 1);
// single-qubit Pauli channel, p = (pI, pX, pY, pZ)
QuantumChannel pauli(double pI, double pX, double pY, double pZ);
QuantumChannel pauli(const std::vector<double>& probs, const std::vector<std::string>& strings);
QuantumChannel unitary(const Mat& u);
}  // namespace channels

DensityMatrix apply_channel(const DensityMatrix& rho, const QuantumChannel& ch);

struct Dilation {
  Mat u;           // acts on system (leading qubits) then environment
  StateVector env;  // environment initial state
};
// Isometric extension V|psi>|0> = sum_a M_a|psi>|a>, completed to a unitary
Dilation stinespring_dilation(const QuantumChannel& ch);
DensityMatrix stinespring_apply(const DensityMatrix& rho, const Mat& dilation, const StateVector& env);

double expectation(const StateVector& psi, const Observable& o);
double expectation(const DensityMatrix& rho, const Observable& o);

// shots == 0 -> exact probabilities, otherwise multinomial frequencies
// (counts divided by shots is left to the caller: the vector holds counts)
std::vector<double> measure_projective(const DensityMatrix& rho, const std::vector<Mat>& projectors,
                                       long long shots, Rng& rng);
std::vector<double> measure_projective(const StateVector& psi, const std::vector<Mat>& projectors,
                                       long long shots, Rng& rng);
std::vector<double> probabilities(const StateVector& psi);
std::vector<double> probabilities(const DensityMatrix& rho);
std::vector<long long> sample_counts(const std::vector<double>& probs, long long shots, Rng& rng);
std::vector<Mat> computational_projectors(int n);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
double purity(const DensityMatrix& rho);
double trace_distance(const Mat& a, const Mat& b);
double fidelity_pure(const StateVector& psi, const DensityMatrix& rho);

Mat haar_random_unitary(long long dim, Rng& rng);
StateVector random_state(int n, Rng& rng);
// Hilbert-Schmidt style random mixed state of the given rank (rank 0 = full)
DensityMatrix random_density(int n, Rng& rng, int rank = 0);
Mat random_hermitian(long long dim, Rng& rng);

}  // namespace qmlbench
