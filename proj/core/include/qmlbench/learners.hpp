#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmlbench/kernel.hpp"
#include "qmlbench/sim.hpp"

namespace qmlbench {

// ---- parameterised circuits ----

struct CircuitOp {
  enum class Kind { RX, RY, RZ, Fixed } kind = Kind::Fixed;
  std::vector<int> wires;
  int slot = -1;  // parameter index for rotations
  Mat fixed;      // matrix for Fixed ops
  std::string label;
};

struct ParamCircuit {
  int n = 0;
  int layers = 0;
  int num_params = 0;
  std::vector<CircuitOp> ops;

  // Rot(phi, theta, omega) as RZ(phi), RY(theta), RZ(omega) with three fresh slots
  void add_rot(int q);
  void add_rotation(CircuitOp::Kind k, int q);
  void add_fixed(const Mat& m, std::vector<int> wires, std::string label);

  void apply_inplace(const RVec& theta, Vec& amps) const;
  Vec apply(const RVec& theta, const Vec& amps) const;
  Mat unitary(const RVec& theta) const;
  // every slot used exactly once
  void validate() const;
};

enum class Entangler { CZ, CNOT };
Entangler parse_entangler(const std::string& s);

// 0-based layer k couples (k%2 + 2m, k%2 + 2m + 1)
std::vector<std::pair<int, int>> hec_pairs(int n, int layer);
ParamCircuit build_hec(int n, int layers, Entangler ent = Entangler::CZ);
// convolution + pooling layout; topology only
ParamCircuit build_qcnn(int n);

double qnn_forward(const ParamCircuit& c, const RVec& theta, const StateVector& in, const Mat& obs);
double qnn_forward(const ParamCircuit& c, const RVec& theta, const DensityMatrix& in, const Mat& obs);
double qnn_forward(const ParamCircuit& c, const RVec& theta, const DensityMatrix& in, const Observable& obs);
RVec parameter_shift_grad(const ParamCircuit& c, const RVec& theta, const StateVector& in, const Mat& obs);
RVec parameter_shift_grad(const ParamCircuit& c, const RVec& theta, const DensityMatrix& in, const Mat& obs);
double parameter_shift_component(const ParamCircuit& c, const RVec& theta, const StateVector& in, const Mat& obs, int j);
RVec finite_difference_grad(const ParamCircuit& c, const RVec& theta, const StateVector& in, const Mat& obs,
                            double h = 1e-5);

// ---- optimisers ----
struct Adam {
  double lr = 0.01, beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  RVec m, v;
  long long t = 0;
  void step(RVec& theta, const RVec& grad);
};
struct Sgd {
  double lr = 0.01;
  void step(RVec& theta, const RVec& grad) const { theta -= lr * grad; }
};

// ---- training record ----
struct TrainRecord {
  std::vector<int> epochs;
  std::vector<double> train_loss, test_loss, train_acc, test_acc;
  double initial_loss = 0.0;
  std::string param_hash;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};
std::string hash_params(const RVec& theta);

// ---- QNN classifier ----
struct QnnConfig {
  int n = 4;
  int layers = 2;
  double lr = 0.1;
  int batch = 8;
  int epochs = 50;
  std::string optimizer = "adam";  // or "sgd"
  std::uint64_t seed = 0;
  char axis = 'Y';
  Entangler entangler = Entangler::CZ;
};

struct QnnModel {
  ParamCircuit circuit;
  RVec theta;
  char axis = 'Y';
};

// features in [-1,1] are mapped to angles pi (x + 1) / 2
StateVector qnn_encode(const RVec& x, int n, char axis);
double qnn_output(const QnnModel& m, const RVec& x);
int qnn_predict(const QnnModel& m, const RVec& x);
double qnn_loss(const QnnModel& m, const Dataset& X, const std::vector<int>& y);
double qnn_accuracy(const QnnModel& m, const Dataset& X, const std::vector<int>& y);

struct QnnResult {
  QnnModel model;
  TrainRecord record;
};
QnnResult qnn_train_classifier(const Dataset& Xtr, const std::vector<int>& ytr, const Dataset& Xte,
                               const std::vector<int>& yte, const QnnConfig& cfg);

// ---- barren plateau ----
struct BpRow {
  int n = 0;
  int depth = 0;
  long long samples = 0;
  double mean_grad = 0, var_grad = 0, predicted_var = 0, mean_sem = 0;
};
// depth = depth_factor * N layers of HEC, O = Z^{(x)N}, d/d(theta of RY on qubit 0 in the middle layer)
std::vector<BpRow> bp_variance_experiment(const std::vector<int>& ns, long long samples, std::uint64_t seed,
                                          int depth_factor = 2, Entangler ent = Entangler::CZ);

// ---- perceptron ----
struct MarginData {
  Dataset X;
  std::vector<int> y;
  RVec w_star;
  double margin = 0;  // realised min_i y_i <w*, x_i>
};
MarginData synth_margin_dataset(int n, int d, double gamma, std::uint64_t seed);

struct PerceptronResult {
  RVec w;
  long long mistakes = 0;
  long long passes = 0;
  bool converged = false;
};
PerceptronResult perceptron_train(const Dataset& X, const std::vector<int>& y, long long max_passes = 1000000);

// ---- MLP ----
enum class Activation { sigmoid, relu, tanh, linear };
enum class OutputKind { linear, sigmoid, softmax };
enum class LossKind { mse, bce, cross_entropy };

struct MLP {
  std::vector<RMat> W;  // W[l] is out x in
  std::vector<RVec> b;
  Activation hidden = Activation::sigmoid;
  OutputKind out = OutputKind::softmax;

  static MLP init(const std::vector<int>& dims, Activation hidden, OutputKind out, Rng& rng);
  int num_layers() const { return (int)W.size(); }
};

struct MLPGrad {
  std::vector<RMat> dW;
  std::vector<RVec> db;
  RVec dinput;
  double loss = 0;
};

RVec mlp_forward(const MLP& net, const RVec& x);
MLPGrad mlp_backprop(const MLP& net, const RVec& x, const RVec& target, LossKind loss);
double mlp_loss(const MLP& net, const RVec& x, const RVec& target, LossKind loss);
double bce(double p, double y);

// ---- capacity diagnostics ----
struct CapacityBounds {
  double covering_log_bound = 0;  // log of (7 N_gt ||O|| / eps)^{2^{2k} N_gt} at eps = 0.05
  double gen_bound = 0;           // (8L + c + 24 L sqrt(N_gt) 2^k) / sqrt(n)
  double confidence_term = 0;     // 3 C sqrt(ln(2/delta) / (2n))
};
CapacityBounds capacity_bound_diagnostics(int n_gt, int k, double norm_o, long long n, double delta, double lipschitz,
                                          double c_bound);

}  // namespace qmlbench
