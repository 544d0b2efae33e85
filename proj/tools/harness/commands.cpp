#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "qmlbench/blockenc.hpp"
#include "qmlbench/dataset.hpp"
#include "qmlbench/grover.hpp"
#include "qmlbench/learners.hpp"
#include "qmlbench/qgan.hpp"
#include "qmlbench/qtransformer.hpp"

namespace qmlbench::harness {

#ifndef QMLBENCH_FIXTURE_DIR
#define QMLBENCH_FIXTURE_DIR "fixtures"
#endif

std::string default_fixture_dir() {
  if (const char* e = std::getenv("QMLBENCH_FIXTURES")) return e;
  return QMLBENCH_FIXTURE_DIR;
}

std::vector<long long> parse_int_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ArgumentError("'" + s + "' is not a comma-separated integer list");
    }
  }
  if (out.empty()) throw ArgumentError("empty integer list");
  return out;
}

namespace {

json vec_j(const RVec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json mat_j(const RMat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec_j(m.row(i).transpose()));
  return a;
}

json cmat_j(const Mat& m) { return {{"re", mat_j(m.real())}, {"im", mat_j(m.imag())}}; }

bool ends_with(const std::string& s, const std::string& t) {
  return s.size() >= t.size() && s.compare(s.size() - t.size(), t.size(), t) == 0;
}

// CSV artifacts go to --out when it names a .csv file
std::string csv_target(const Common& c) { return ends_with(c.out, ".csv") ? c.out : std::string(); }

void write_csv(const std::string& path, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << std::setprecision(17);
  for (size_t k = 0; k < header.size(); ++k) f << (k ? "," : "") << header[k];
  f << "\n";
  for (auto& r : rows) {
    for (size_t k = 0; k < r.size(); ++k) f << (k ? "," : "") << r[k];
    f << "\n";
  }
  if (!f) throw ValidationError("write to '" + path + "' failed");
}

ResultRecord start(const std::string& name, const Common& c) {
  ResultRecord r;
  r.subcommand = name;
  r.config["seed"] = c.seed;
  if (!c.mode.empty()) r.config["mode"] = c.mode;
  if (!c.out.empty()) r.config["out"] = c.out;
  return r;
}

// ---- tiny circuit language: "H 0; RX 0.3 1; CNOT 0 1" ----
struct Op {
  std::string gate;
  double angle = 0;
  std::vector<int> wires;
};

std::vector<Op> parse_circuit(const std::string& text, int n) {
  std::vector<Op> ops;
  std::stringstream ss(text);
  std::string stmt;
  while (std::getline(ss, stmt, ';')) {
    std::stringstream ts(stmt);
    Op op;
    if (!(ts >> op.gate)) continue;
    std::transform(op.gate.begin(), op.gate.end(), op.gate.begin(), ::toupper);
    const bool rot = op.gate == "RX" || op.gate == "RY" || op.gate == "RZ";
    const bool two = op.gate == "CNOT" || op.gate == "CZ" || op.gate == "SWAP";
    if (rot && !(ts >> op.angle)) throw ArgumentError("'" + stmt + "': rotation needs an angle");
    int q;
    while (ts >> q) op.wires.push_back(q);
    if (!ts.eof()) throw ArgumentError("'" + stmt + "': cannot parse");
    if (op.wires.size() != (two ? 2u : 1u)) throw ArgumentError("'" + stmt + "': wrong number of qubits");
    for (int w : op.wires)
      if (w < 0 || w >= n) throw ArgumentError("'" + stmt + "': qubit out of range");
    if (two && op.wires[0] == op.wires[1]) throw ArgumentError("'" + stmt + "': repeated qubit");
    ops.push_back(op);
  }
  return ops;
}

Gate gate_of(const Op& op) {
  const std::string& g = op.gate;
  if (g == "I") return gates::I1();
  if (g == "X") return gates::X();
  if (g == "Y") return gates::Y();
  if (g == "Z") return gates::Z();
  if (g == "H") return gates::H();
  if (g == "S") return gates::S();
  if (g == "SDG") return gates::Sdg();
  if (g == "T") return gates::T();
  if (g == "RX") return gates::RX(op.angle);
  if (g == "RY") return gates::RY(op.angle);
  if (g == "RZ") return gates::RZ(op.angle);
  if (g == "CNOT") return gates::CNOT();
  if (g == "CZ") return gates::CZ();
  if (g == "SWAP") return gates::SWAP();
  throw ArgumentError("unknown gate '" + g + "'");
}

QuantumChannel local_depolarizing(double p, int q, int n) {
  std::vector<Mat> k;
  for (auto& m : channels::depolarizing(p, 1).kraus) k.push_back(embed(m, {q}, n));
  return QuantumChannel(k);
}

DensityMatrix run_density(int n, const std::vector<Op>& ops, double noise) {
  DensityMatrix rho = DensityMatrix::from_pure(StateVector::zero(n));
  for (auto& op : ops) {
    rho = apply_gate(rho, gate_of(op), op.wires);
    if (noise > 0)
      for (int w : op.wires) rho = apply_channel(rho, local_depolarizing(noise, w, n));
  }
  return rho;
}

StateVector run_state(int n, const std::vector<Op>& ops) {
  StateVector psi = StateVector::zero(n);
  for (auto& op : ops) psi = apply_gate(psi, gate_of(op), op.wires);
  return psi;
}

void check_qubits(int n) {
  if (n < 1) throw ArgumentError("need at least one qubit");
  check_capacity(n);
}

}  // namespace

ResultRecord cmd_simulate(const SimulateOpts& o, const Common& c) {
  check_qubits(o.qubits);
  const std::string mode = c.mode.empty() ? (o.noise > 0 ? "density" : "statevector") : c.mode;
  if (mode != "statevector" && mode != "density") throw ArgumentError("simulate mode must be statevector or density");
  if (o.noise < 0 || o.noise > 1) throw ArgumentError("noise must lie in [0,1]");
  if (mode == "statevector" && o.noise > 0) throw ValidationError("noise needs the density mode");
  ResultRecord r = start("simulate", c);
  r.config["mode"] = mode;
  r.config["qubits"] = o.qubits;
  r.config["circuit"] = o.circuit;
  r.config["noise"] = o.noise;
  const auto ops = parse_circuit(o.circuit, o.qubits);
  if (mode == "statevector") {
    const StateVector psi = run_state(o.qubits, ops);
    r.metrics["probabilities"] = probabilities(psi);
    r.metrics["amplitudes_re"] = vec_j(psi.amps.real());
    r.metrics["amplitudes_im"] = vec_j(psi.amps.imag());
    r.metrics["norm"] = psi.amps.norm();
  } else {
    const DensityMatrix rho = run_density(o.qubits, ops, o.noise);
    r.metrics["probabilities"] = probabilities(rho);
    r.metrics["purity"] = purity(rho);
    r.metrics["trace"] = rho.m.trace().real();
    r.metrics["rho"] = cmat_j(rho.m);
  }
  r.metrics["gates"] = ops.size();
  return r;
}

ResultRecord cmd_measure(const MeasureOpts& o, const Common& c) {
  check_qubits(o.qubits);
  if (o.shots < 1) throw ArgumentError("shots must be positive");
  ResultRecord r = start("measure", c);
  const std::string mode = c.mode.empty() ? (o.pauli.empty() ? "computational" : "pauli") : c.mode;
  r.config["mode"] = mode;
  r.config["qubits"] = o.qubits;
  r.config["circuit"] = o.circuit;
  r.config["shots"] = o.shots;
  Rng rng = Rng(c.seed).derive("measure");
  const StateVector psi = run_state(o.qubits, parse_circuit(o.circuit, o.qubits));
  if (mode == "computational") {
    const auto counts = measure_projective(psi, computational_projectors(o.qubits), o.shots, rng);
    r.metrics["counts"] = counts;
    r.metrics["exact_probabilities"] = probabilities(psi);
  } else if (mode == "pauli") {
    if ((int)o.pauli.size() != o.qubits || !is_valid_pauli(o.pauli))
      throw ArgumentError("--pauli must be a string over IXYZ with one letter per qubit");
    r.config["pauli"] = o.pauli;
    r.metrics["estimate"] = estimate_pauli_expectation(psi, o.pauli, o.shots, rng);
    r.metrics["exact"] = expectation(psi, Observable(pauli_string(o.pauli)));
  } else {
    throw ArgumentError("measure mode must be computational or pauli");
  }
  return r;
}

ResultRecord cmd_tomography(const TomographyOpts& o, const Common& c) {
  check_qubits(o.qubits);
  if (o.shots < 0) throw ArgumentError("shots must be non-negative");
  const std::string mode = c.mode.empty() ? "mle" : c.mode;
  if (mode != "mle" && mode != "li") throw ArgumentError("tomography mode must be li or mle");
  ResultRecord r = start("tomography", c);
  r.config["mode"] = mode;
  r.config["qubits"] = o.qubits;
  r.config["shots"] = o.shots;
  r.config["state"] = o.state;
  Rng master(c.seed);
  Rng srng = master.derive("state"), drng = master.derive("data");
  DensityMatrix truth;
  const int n = o.qubits;
  if (o.state == "random") {
    truth = random_density(n, srng);
  } else if (o.state == "random-pure") {
    truth = DensityMatrix::from_pure(random_state(n, srng));
  } else if (o.state == "zero") {
    truth = DensityMatrix::from_pure(StateVector::zero(n));
  } else if (o.state == "plus") {
    truth = DensityMatrix::from_pure(StateVector(Vec::Constant(1LL << n, 1 / std::sqrt(double(1LL << n)))));
  } else if (o.state == "bell") {
    if (n != 2) throw ArgumentError("the bell state needs two qubits");
    Vec v = Vec::Zero(4);
    v(0) = v(3) = 1 / std::sqrt(2.0);
    truth = DensityMatrix::from_pure(StateVector(v));
  } else {
    throw ArgumentError("unknown state '" + o.state + "'");
  }
  const MeasurementData data = simulate_tomography_data(truth, o.shots, drng);
  const TomographyResult t = mode == "li" ? qst_linear_inversion(data) : qst_mle(data);
  r.metrics["trace_distance"] = trace_distance(t.rho_hat, truth.m);
  r.metrics["min_eigenvalue"] = t.min_eigenvalue;
  r.metrics["psd_violation"] = t.psd_violation;
  r.metrics["settings_used"] = t.settings_used;
  r.metrics["rho_hat"] = cmat_j(t.rho_hat);
  r.metrics["rho_true"] = cmat_j(truth.m);
  if (mode == "mle") {
    bool mono = true;
    for (size_t i = 1; i < t.loglik.size(); ++i) mono = mono && t.loglik[i] >= t.loglik[i - 1] - 1e-12;
    r.metrics["iterations"] = t.iterations;
    r.metrics["converged"] = t.converged;
    r.metrics["loglik_monotone"] = mono;
    r.metrics["loglik_final"] = t.loglik.empty() ? 0.0 : t.loglik.back();
  }
  return r;
}

ResultRecord cmd_blockenc(const BlockencOpts& o, const Common& c) {
  const std::string mode = c.mode.empty() ? "demo" : c.mode;
  ResultRecord r = start("blockenc", c);
  r.config["mode"] = mode;
  Rng rng = Rng(c.seed).derive("blockenc");
  if (mode == "demo") {
    Mat A(4, 4);
    A << .36, 0, 0, .64, 0, -.36, .64, 0, 0, .64, .36, 0, .64, 0, 0, -.36;
    const auto terms = pauli_decompose(A);
    std::vector<double> cs;
    std::vector<Mat> us;
    json jt = json::array();
    for (auto& t : terms) {
      cs.push_back(t.coeff);
      us.push_back(pauli_string(t.pauli));
      jt.push_back({{"pauli", t.pauli}, {"coeff", t.coeff}});
    }
    const BlockEncoding be = be_lcu(cs, us);
    r.metrics["terms"] = jt;
    r.metrics["alpha"] = be.alpha;
    r.metrics["ancillas"] = be.anc;
    r.metrics["extract_error"] = (extract(be) - A).cwiseAbs().maxCoeff();
    return r;
  }
  check_qubits(o.qubits);
  const long long d = 1LL << o.qubits;
  r.config["qubits"] = o.qubits;
  if (mode == "pinv") {
    r.config["delta"] = o.delta;
    r.config["eps"] = o.eps;
    const Mat u = haar_random_unitary(d, rng), v = haar_random_unitary(d, rng);
    RVec s(d);
    for (long long i = 0; i < d; ++i) s(i) = rng.uniform(o.delta, 1.0);
    const Mat M = u * s.cast<cd>().asDiagonal() * v.adjoint();
    const BlockEncoding be = be_from_matrix(M, 1.0);
    const BlockEncoding pi = be_pseudo_inverse(be, o.delta, o.eps);
    Eigen::JacobiSVD<Mat> svd(Mat(extract(pi) * M - Mat::Identity(d, d)));
    r.metrics["alpha"] = pi.alpha;
    r.metrics["error"] = svd.singularValues()(0);
    r.metrics["queries"] = pi.prov.queries;
    return r;
  }
  if (mode == "exp") {
    r.config["eps"] = o.eps;
    RMat a(d, d);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
    const BlockEncoding be = be_from_matrix(Mat(a.cast<cd>()));
    const PolySpec p = poly_approx_exp(o.eps);
    const BlockEncoding ep = be_elementwise_poly(be, p);
    const Mat ref = block(be).unaryExpr([](cd x) { return cd(std::exp(x.real())); });
    r.metrics["degree"] = p.degree();
    r.metrics["alpha"] = ep.alpha;
    r.metrics["error"] = (extract(ep) - ref).cwiseAbs().maxCoeff();
    return r;
  }
  throw ArgumentError("blockenc mode must be demo, pinv or exp");
}

ResultRecord cmd_kernel(const KernelOpts& o, const Common& c) {
  if (o.data.empty()) throw ArgumentError("--data is required");
  ResultRecord r = start("kernel", c);
  r.config["data"] = o.data;
  r.config["schema"] = o.schema;
  r.config["map"] = o.map;
  r.config["limit"] = o.limit;
  r.config["shots"] = o.shots;
  LabeledData ds = load_csv_dataset(o.data, parse_csv_schema(o.schema));
  if (o.limit > 0 && (long long)ds.X.size() > o.limit) ds.X.resize(o.limit);
  if (ds.X.empty()) throw ValidationError("dataset is empty");
  const FeatureMap fm = parse_feature_map(o.map);
  RMat K;
  if (o.shots > 0) {
    Rng rng = Rng(c.seed).derive("kernel");
    const size_t n = ds.X.size();
    K.resize(n, n);
    for (size_t i = 0; i < n; ++i) {
      K(i, i) = 1.0;
      for (size_t j = 0; j < i; ++j) K(i, j) = K(j, i) = quantum_kernel_adjoint(fm, ds.X[i], ds.X[j], o.shots, rng);
    }
  } else {
    K = kernel_matrix(ds.X, fm);
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(K, Eigen::EigenvaluesOnly);
  r.metrics["n"] = K.rows();
  r.metrics["symmetry_error"] = (K - K.transpose()).cwiseAbs().maxCoeff();
  r.metrics["min_eigenvalue"] = es.eigenvalues()(0);
  r.metrics["trace"] = K.trace();
  const std::string csv = csv_target(c);
  if (!csv.empty()) {
    write_csv_matrix(csv, K);
    r.artifacts["kernel_csv"] = csv;
  } else {
    r.metrics["kernel"] = mat_j(K);
  }
  return r;
}

namespace {
void write_lines(const std::string& path, const TrainRecord& rec) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  for (size_t i = 0; i < rec.epochs.size(); ++i) {
    json j;
    j["epoch"] = rec.epochs[i];
    j["train_loss"] = rec.train_loss[i];
    if (i < rec.test_loss.size()) j["test_loss"] = rec.test_loss[i];
    if (i < rec.train_acc.size()) j["train_acc"] = rec.train_acc[i];
    if (i < rec.test_acc.size()) j["test_acc"] = rec.test_acc[i];
    f << j.dump() << "\n";
  }
}

json record_j(const TrainRecord& t) {
  json j;
  j["epochs"] = t.epochs;
  j["train_loss"] = t.train_loss;
  j["test_loss"] = t.test_loss;
  if (!t.train_acc.empty()) j["train_acc"] = t.train_acc;
  if (!t.test_acc.empty()) j["test_acc"] = t.test_acc;
  j["initial_loss"] = t.initial_loss;
  j["param_hash"] = t.param_hash;
  j["seed"] = t.seed;
  return j;
}
}  // namespace

ResultRecord cmd_qnn_train(const QnnOpts& o, const Common& c) {
  ResultRecord r = start("qnn-train", c);
  QnnConfig cfg;
  cfg.n = o.qubits;
  cfg.layers = o.layers;
  cfg.epochs = o.epochs;
  cfg.batch = o.batch;
  cfg.lr = o.lr;
  cfg.optimizer = o.optimizer;
  cfg.seed = c.seed;
  cfg.entangler = parse_entangler(o.entangler);
  if (o.axis != "X" && o.axis != "Y") throw ArgumentError("--axis must be X or Y");
  cfg.axis = o.axis[0];
  if (!(o.train_frac > 0 && o.train_frac < 1)) throw ArgumentError("--train-frac must lie in (0,1)");
  for (auto [k, v] : std::initializer_list<std::pair<const char*, json>>{
           {"qubits", o.qubits}, {"layers", o.layers}, {"epochs", o.epochs}, {"batch", o.batch}, {"lr", o.lr},
           {"optimizer", o.optimizer}, {"entangler", o.entangler}, {"axis", o.axis}, {"train_frac", o.train_frac}})
    r.config[k] = v;

  Dataset X;
  std::vector<int> y;
  if (o.data.empty()) {
    r.config["gamma"] = o.gamma;
    r.config["data_seed"] = o.data_seed;
    r.config["samples"] = o.samples;
    const MarginData md = synth_margin_dataset((int)o.samples, o.qubits, o.gamma, o.data_seed);
    X = md.X;
    y = md.y;
    r.metrics["realised_margin"] = md.margin;
  } else {
    r.config["data"] = o.data;
    const LabeledData ds = load_csv_dataset(o.data, CsvSchema::generic);
    X = ds.X;
    y = ds.labels;
    for (int& v : y) {
      if (v == 0) v = -1;
      if (v != 1 && v != -1) throw ValidationError("QNN labels must be +-1 or 0/1");
    }
    for (auto& x : X)
      if (x.size() != o.qubits) throw ValidationError("feature count must equal --qubits");
  }
  const size_t ntr = (size_t)std::llround(o.train_frac * X.size());
  if (ntr < 1 || ntr >= X.size()) throw ValidationError("split leaves an empty train or test set");
  const Dataset Xtr(X.begin(), X.begin() + ntr), Xte(X.begin() + ntr, X.end());
  const std::vector<int> ytr(y.begin(), y.begin() + ntr), yte(y.begin() + ntr, y.end());
  const QnnResult res = qnn_train_classifier(Xtr, ytr, Xte, yte, cfg);
  r.metrics["record"] = record_j(res.record);
  r.metrics["final_train_loss"] = res.record.train_loss.back();
  r.metrics["final_test_accuracy"] = res.record.test_acc.back();
  if (!o.log.empty()) {
    write_lines(o.log, res.record);
    r.artifacts["train_log"] = o.log;
    r.config["log"] = o.log;
  }
  if (!o.params.empty()) {
    std::ofstream f(o.params);
    if (!f) throw ValidationError("cannot write '" + o.params + "'");
    f << dump(json{{"theta", vec_j(res.model.theta)}, {"param_hash", res.record.param_hash}});
    r.artifacts["params"] = o.params;
    r.config["params"] = o.params;
  }
  return r;
}

ResultRecord cmd_qgan_train(const QganOpts& o, const Common& c) {
  ResultRecord r = start("qgan-train", c);
  const std::string path = o.data.empty() ? default_fixture_dir() + "/optdigits_small.csv" : o.data;
  for (auto [k, v] : std::initializer_list<std::pair<const char*, json>>{
           {"data", path}, {"schema", o.schema}, {"label", o.label}, {"samples", o.samples}, {"patches", o.patches},
           {"qubits", o.qubits}, {"ancillas", o.ancillas}, {"layers", o.layers}, {"epochs", o.epochs},
           {"batch", o.batch}, {"lr_g", o.lr_g}, {"lr_d", o.lr_d}})
    r.config[k] = v;
  LabeledData ds = filter_label(load_csv_dataset(path, parse_csv_schema(o.schema)), o.label);
  if (o.samples > 0 && (long long)ds.X.size() > o.samples) ds.X.resize(o.samples);
  if (ds.X.empty()) throw ValidationError("no training images with label " + std::to_string(o.label));
  for (auto& x : ds.X)
    if (x.minCoeff() < 0 || x.maxCoeff() > 1) throw ValidationError("QGAN images must be scaled to [0,1]");
  QganConfig cfg;
  cfg.T = o.patches;
  cfg.n = o.qubits;
  cfg.n_anc = o.ancillas;
  cfg.layers = o.layers;
  cfg.epochs = o.epochs;
  cfg.batch = o.batch;
  cfg.lr_g = o.lr_g;
  cfg.lr_d = o.lr_d;
  cfg.seed = c.seed;
  const QganResult res = qgan_patch_train(ds.X, cfg);
  json steps = json::array();
  bool finite = true;
  for (auto& s : res.steps) {
    steps.push_back({{"epoch", s.epoch}, {"step", s.step}, {"loss_d", s.loss_d}, {"loss_g", s.loss_g}});
    finite = finite && std::isfinite(s.loss_d) && std::isfinite(s.loss_g);
  }
  r.metrics["images"] = ds.X.size();
  r.metrics["steps"] = steps;
  r.metrics["losses_finite"] = finite;
  r.metrics["record"] = record_j(res.record);
  r.metrics["min_postselection"] = res.min_post;
  r.metrics["max_patch_sum_error"] = res.max_sum_error;
  r.metrics["min_patch_entry"] = res.min_entry;
  r.metrics["resampled_latents"] = res.resampled_latents;
  if (!o.log.empty()) {
    std::ofstream f(o.log);
    if (!f) throw ValidationError("cannot write '" + o.log + "'");
    for (auto& s : steps) f << s.dump() << "\n";
    r.artifacts["train_log"] = o.log;
    r.config["log"] = o.log;
  }
  return r;
}

ResultRecord cmd_grover(const GroverOpts& o, const Common& c) {
  check_qubits(o.n);
  const long long d = 1LL << o.n;
  if (o.m < 1 || o.m > d) throw ValidationError("--m must satisfy 1 <= m <= 2^n");
  ResultRecord r = start("grover", c);
  r.config["n"] = o.n;
  r.config["m"] = o.m;
  Rng master(c.seed);
  Rng pick = master.derive("marked"), meas = master.derive("measure");
  std::vector<long long> all(d);
  std::iota(all.begin(), all.end(), 0LL);
  std::shuffle(all.begin(), all.end(), pick.engine());
  std::vector<char> mark(d, 0);
  for (long long i = 0; i < o.m; ++i) mark[all[i]] = 1;
  const SearchProblem p(o.n, [&](long long x) { return mark[x] != 0; });
  const GroverResult g = grover_search(p, meas);
  std::vector<long long> marked;
  for (long long x = 0; x < d; ++x)
    if (mark[x]) marked.push_back(x);
  r.metrics["marked"] = marked;
  r.metrics["iterations"] = g.m;
  r.metrics["success_prob"] = g.success_prob;
  r.metrics["success_closed_form"] = g.success_closed;
  r.metrics["sampled_index"] = g.index;
  r.metrics["found"] = g.found;
  return r;
}

ResultRecord cmd_qperceptron(const QperceptronOpts& o, const Common& c) {
  ResultRecord r = start("qperceptron", c);
  for (auto [k, v] : std::initializer_list<std::pair<const char*, json>>{
           {"ds", o.ds}, {"seeds", o.seeds}, {"gamma", o.gamma}, {"eps", o.eps}, {"c", o.c}, {"dim", o.dim}})
    r.config[k] = v;
  const auto ds = parse_int_list(o.ds);
  for (long long d : ds)
    if (!is_pow2(d)) throw ValidationError("dataset sizes must be powers of two");
  const ScalingStudy st = perceptron_scaling_study(ds, o.seeds, o.gamma, o.eps, o.c, o.dim, c.seed);
  std::vector<std::vector<double>> rows;
  json jr = json::array();
  for (auto& row : st.rows) {
    rows.push_back({double(row.d), row.median_quantum, row.median_classical});
    jr.push_back({{"d", row.d}, {"median_quantum", row.median_quantum}, {"median_classical", row.median_classical},
                  {"quantum_success", row.quantum_success}, {"classical_success", row.classical_success}});
  }
  r.metrics["rows"] = jr;
  if (ds.size() >= 2) {
    r.metrics["slope_quantum"] = st.slope_quantum;
    r.metrics["slope_classical"] = st.slope_classical;
  }
  const std::string csv = csv_target(c);
  if (!csv.empty()) {
    write_csv(csv, {"d", "median_quantum_queries", "median_classical_queries"}, rows);
    r.artifacts["scaling_csv"] = csv;
  }
  return r;
}

ResultRecord cmd_bp_experiment(const BpOpts& o, const Common& c) {
  ResultRecord r = start("bp-experiment", c);
  r.config["ns"] = o.ns;
  r.config["samples"] = o.samples;
  r.config["depth_factor"] = o.depth_factor;
  r.config["entangler"] = o.entangler;
  std::vector<int> ns;
  for (long long n : parse_int_list(o.ns)) {
    check_qubits((int)n);
    ns.push_back((int)n);
  }
  if (o.samples < 2) throw ArgumentError("need at least two samples");
  const auto rows = bp_variance_experiment(ns, o.samples, c.seed, o.depth_factor, parse_entangler(o.entangler));
  std::vector<std::vector<double>> table;
  json jr = json::array();
  for (auto& b : rows) {
    table.push_back({double(b.n), b.var_grad, b.predicted_var});
    jr.push_back({{"N", b.n}, {"depth", b.depth}, {"var", b.var_grad}, {"predicted", b.predicted_var},
                  {"mean", b.mean_grad}, {"mean_sem", b.mean_sem}});
  }
  r.metrics["rows"] = jr;
  const std::string csv = csv_target(c);
  if (!csv.empty()) {
    write_csv(csv, {"N", "var", "predicted"}, table);
    r.artifacts["bp_csv"] = csv;
  }
  return r;
}

namespace {
RMat json_mat(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("instance is missing '") + key + "'");
  const json& a = j.at(key);
  if (!a.is_array() || a.empty() || !a[0].is_array()) throw ValidationError(std::string("'") + key + "' must be a matrix");
  RMat m(a.size(), a[0].size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a[0].size()) throw ValidationError(std::string("'") + key + "' has ragged rows");
    for (size_t k = 0; k < a[i].size(); ++k) {
      if (!a[i][k].is_number()) throw ValidationError(std::string("'") + key + "' has a non-numeric entry");
      m(i, k) = a[i][k].get<double>();
    }
  }
  return m;
}

RVec json_vec(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("instance is missing '") + key + "'");
  const json& a = j.at(key);
  if (!a.is_array()) throw ValidationError(std::string("'") + key + "' must be a vector");
  RVec v(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw ValidationError(std::string("'") + key + "' has a non-numeric entry");
    v(i) = a[i].get<double>();
  }
  return v;
}
}  // namespace

ResultRecord cmd_transformer(const TransformerOpts& o, const Common& c) {
  if (o.instance.empty()) throw ArgumentError("--instance is required");
  std::ifstream f(o.instance);
  if (!f) throw ValidationError("cannot open '" + o.instance + "'");
  json inst;
  try {
    inst = json::parse(f);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("instance is not valid JSON: ") + e.what());
  }
  TransformerWeights w;
  const RMat S = json_mat(inst, "S");
  w.Wq = json_mat(inst, "W_q");
  w.Wk = json_mat(inst, "W_k");
  w.Wv = json_mat(inst, "W_v");
  w.M1 = json_mat(inst, "M_1");
  w.M2 = json_mat(inst, "M_2");
  w.b1 = json_vec(inst, "b_1");
  w.b2 = json_vec(inst, "b_2");
  QTransformerConfig cfg;
  if (!inst.contains("j") || !inst["j"].is_number_integer()) throw ValidationError("instance needs an integer 'j'");
  cfg.j = inst["j"].get<int>() - 1;  // 1-based in the file
  cfg.masked = inst.value("masked", false);
  const std::string mode = !c.mode.empty() ? c.mode : inst.value("mode", std::string("exact"));
  cfg.mode = parse_qmode(mode);
  cfg.eps = o.eps > 0 ? o.eps : inst.value("epsilon", 1e-6);

  ResultRecord r = start("transformer", c);
  r.config["instance"] = o.instance;
  r.config["mode"] = to_string(cfg.mode);
  r.config["epsilon"] = cfg.eps;
  r.config["j"] = cfg.j + 1;
  r.config["masked"] = cfg.masked;

  const QTransformerResult q = q_transformer_row(S, w, cfg);
  r.metrics["classical_row"] = vec_j(q.classical);
  r.metrics["quantum_amplitudes"] = vec_j(q.output.amps);
  r.metrics["cosine_similarity"] = q.cosine;
  r.metrics["alpha0"] = q.alpha0;
  json rep;
  rep["label"] = "construction count";
  rep["total"] = q.construction_count;
  rep["degree_exp"] = q.degree_exp;
  rep["degree_gelu"] = q.degree_gelu;
  json stages = json::array();
  for (auto& s : q.cost)
    stages.push_back({{"stage", s.stage}, {"queries", s.queries}, {"logical_ancillas", s.logical_anc},
                      {"alpha", s.alpha}, {"degree", s.degree}, {"amplification_rounds", s.rounds}});
  rep["stages"] = stages;
  r.metrics["resource_report"] = rep;
  json norm;
  for (auto* st : {&q.softmax, &q.attention, &q.layernorm, &q.ffn}) {
    json fj = json::object();
    for (auto& [k, v] : st->factors) fj[k] = v;
    norm.push_back(fj);
  }
  r.metrics["normalization_factors"] = {{"softmax", norm[0]}, {"attention", norm[1]}, {"layernorm", norm[2]}, {"ffn", norm[3]}};
  r.metrics["reconstruction_error"] = {{"softmax", q.recon_softmax}, {"attention", q.recon_attention},
                                       {"layernorm", q.recon_layernorm}, {"ffn", q.recon_ffn}};
  return r;
}

ResultRecord cmd_norm_study(const NormStudyOpts& o, const Common& c) {
  ResultRecord r = start("norm-study", c);
  r.config["sampler"] = o.sampler;
  r.config["ells"] = o.ells;
  r.config["d"] = o.d;
  r.config["trials"] = o.trials;
  const NormStudy st = norm_scaling_study(parse_row_sampler(o.sampler), parse_int_list(o.ells), o.d, o.trials, c.seed);
  std::vector<std::vector<double>> rows;
  json jr = json::array();
  for (auto& row : st.rows) {
    rows.push_back({double(row.ell), row.spectral, row.frobenius});
    jr.push_back({{"ell", row.ell}, {"spectral", row.spectral}, {"frobenius", row.frobenius}});
  }
  r.metrics["rows"] = jr;
  r.metrics["slope_spectral"] = st.slope_spectral;
  r.metrics["slope_frobenius"] = st.slope_frobenius;
  r.metrics["worst_case_flag"] = st.worst_case;
  const std::string csv = csv_target(c);
  if (!csv.empty()) {
    write_csv(csv, {"ell", "spectral_norm", "frobenius_norm"}, rows);
    r.artifacts["norm_csv"] = csv;
  }
  return r;
}

}  // namespace qmlbench::harness
