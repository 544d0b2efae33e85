#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "record.hpp"

namespace qmlbench::harness {

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string mode;
  std::string fixtures;
};

struct SimulateOpts {
  int qubits = 2;
  std::string circuit = "H 0; CNOT 0 1";
  double noise = 0.0;
};
struct MeasureOpts {
  int qubits = 2;
  std::string circuit = "H 0; CNOT 0 1";
  long long shots = 1000;
  std::string pauli;
};
struct TomographyOpts {
  int qubits = 1;
  long long shots = 0;
  std::string state = "random";
};
struct BlockencOpts {
  int qubits = 2;
  double delta = 0.25;
  double eps = 1e-6;
};
struct KernelOpts {
  std::string data;
  std::string schema = "optdigits";
  std::string map = "angleX";
  long long limit = 0;
  long long shots = 0;
};
struct QnnOpts {
  std::string data;
  double gamma = 0.5;
  std::uint64_t data_seed = 100;
  long long samples = 120;
  double train_frac = 2.0 / 3.0;
  int qubits = 4, layers = 2, epochs = 50, batch = 8;
  double lr = 0.1;
  std::string optimizer = "adam", entangler = "CZ", axis = "Y";
  std::string log, params;
};
struct QganOpts {
  std::string data;
  std::string schema = "optdigits";
  int label = 5;
  long long samples = 50;
  int patches = 4, qubits = 5, ancillas = 1, layers = 6, epochs = 2, batch = 4;
  double lr_g = 0.3, lr_d = 0.01;
  std::string log;
};
struct GroverOpts {
  int n = 10;
  long long m = 1;  // number of marked items
};
struct QperceptronOpts {
  std::string ds = "64,128,256,512,1024,2048,4096";
  int seeds = 20;
  double gamma = 0.3, eps = 0.1, c = 1.5;
  int dim = 8;
};
struct BpOpts {
  std::string ns = "2,3,4,5,6";
  long long samples = 10000;
  int depth_factor = 2;
  std::string entangler = "CZ";
};
struct TransformerOpts {
  std::string instance;
  double eps = -1;  // < 0: take the instance's epsilon
};
struct NormStudyOpts {
  std::string sampler = "unit";
  std::string ells = "32,64,128,256,512,1024";
  int d = 64, trials = 5;
};
struct AcceptanceOpts {
  std::string suite = "all";
  std::string only;
};

ResultRecord cmd_simulate(const SimulateOpts& o, const Common& c);
ResultRecord cmd_measure(const MeasureOpts& o, const Common& c);
ResultRecord cmd_tomography(const TomographyOpts& o, const Common& c);
ResultRecord cmd_blockenc(const BlockencOpts& o, const Common& c);
ResultRecord cmd_kernel(const KernelOpts& o, const Common& c);
ResultRecord cmd_qnn_train(const QnnOpts& o, const Common& c);
ResultRecord cmd_qgan_train(const QganOpts& o, const Common& c);
ResultRecord cmd_grover(const GroverOpts& o, const Common& c);
ResultRecord cmd_qperceptron(const QperceptronOpts& o, const Common& c);
ResultRecord cmd_bp_experiment(const BpOpts& o, const Common& c);
ResultRecord cmd_transformer(const TransformerOpts& o, const Common& c);
ResultRecord cmd_norm_study(const NormStudyOpts& o, const Common& c);
// prints one line per criterion to `log`; metrics.all_pass tells the outcome
ResultRecord cmd_acceptance(const AcceptanceOpts& o, const Common& c, std::ostream& log);

// full front end: returns the process exit code
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string default_fixture_dir();
std::vector<long long> parse_int_list(const std::string& s);

}  // namespace qmlbench::harness
