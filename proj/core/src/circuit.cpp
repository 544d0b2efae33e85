#include <cmath>
#include <numeric>

#include "qmlbench/learners.hpp"

namespace qmlbench {

void ParamCircuit::add_rotation(CircuitOp::Kind k, int q) {
  if (q < 0 || q >= n) throw ArgumentError("rotation wire out of range");
  CircuitOp op;
  op.kind = k;
  op.wires = {q};
  op.slot = num_params++;
  op.label = k == CircuitOp::Kind::RX ? "RX" : k == CircuitOp::Kind::RY ? "RY" : "RZ";
  ops.push_back(std::move(op));
}

void ParamCircuit::add_rot(int q) {
  add_rotation(CircuitOp::Kind::RZ, q);
  add_rotation(CircuitOp::Kind::RY, q);
  add_rotation(CircuitOp::Kind::RZ, q);
}

void ParamCircuit::add_fixed(const Mat& m, std::vector<int> wires, std::string label) {
  CircuitOp op;
  op.kind = CircuitOp::Kind::Fixed;
  op.fixed = m;
  op.wires = std::move(wires);
  op.label = std::move(label);
  ops.push_back(std::move(op));
}

namespace {
Mat rotation_matrix(CircuitOp::Kind k, double t) {
  switch (k) {
    case CircuitOp::Kind::RX: return gates::RX(t).m;
    case CircuitOp::Kind::RY: return gates::RY(t).m;
    case CircuitOp::Kind::RZ: return gates::RZ(t).m;
    default: break;
  }
  throw ArgumentError("not a rotation");
}
}  // namespace

void ParamCircuit::apply_inplace(const RVec& theta, Vec& amps) const {
  if (theta.size() != num_params) throw ArgumentError("parameter vector has the wrong length");
  for (auto& op : ops) {
    if (op.kind == CircuitOp::Kind::Fixed)
      qmlbench::apply_inplace(amps, n, op.fixed, op.wires);
    else
      qmlbench::apply_inplace(amps, n, rotation_matrix(op.kind, theta(op.slot)), op.wires);
  }
}

Vec ParamCircuit::apply(const RVec& theta, const Vec& amps) const {
  Vec v = amps;
  apply_inplace(theta, v);
  return v;
}

Mat ParamCircuit::unitary(const RVec& theta) const {
  const long long d = 1LL << n;
  Mat u = Mat::Identity(d, d);
  for (long long c = 0; c < d; ++c) {
    Vec col = u.col(c);
    apply_inplace(theta, col);
    u.col(c) = col;
  }
  return u;
}

void ParamCircuit::validate() const {
  std::vector<int> uses(num_params, 0);
  for (auto& op : ops) {
    if (op.kind == CircuitOp::Kind::Fixed) continue;
    if (op.slot < 0 || op.slot >= num_params) throw ValidationError("parameter slot out of range");
    ++uses[op.slot];
  }
  for (int u : uses)
    if (u != 1) throw ValidationError("every parameter slot must be used exactly once");
}

Entangler parse_entangler(const std::string& s) {
  if (s == "CZ" || s == "cz") return Entangler::CZ;
  if (s == "CNOT" || s == "cnot") return Entangler::CNOT;
  throw ArgumentError("unknown entangler '" + s + "'");
}

std::vector<std::pair<int, int>> hec_pairs(int n, int layer) {
  std::vector<std::pair<int, int>> p;
  for (int q = layer % 2; q + 1 < n; q += 2) p.emplace_back(q, q + 1);
  return p;
}

ParamCircuit build_hec(int n, int layers, Entangler ent) {
  if (n < 1 || layers < 1) throw ArgumentError("HEC needs N >= 1 and L >= 1");
  check_capacity(n);
  ParamCircuit c;
  c.n = n;
  c.layers = layers;
  const Mat e = ent == Entangler::CZ ? gates::CZ().m : gates::CNOT().m;
  const std::string lbl = ent == Entangler::CZ ? "CZ" : "CNOT";
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) c.add_rot(q);
    for (auto [a, b] : hec_pairs(n, l)) c.add_fixed(e, {a, b}, lbl);
  }
  return c;
}

ParamCircuit build_qcnn(int n) {
  if (n < 2 || !is_pow2(n)) throw ArgumentError("QCNN layout needs a power-of-two qubit count >= 2");
  ParamCircuit c;
  c.n = n;
  std::vector<int> live(n);
  std::iota(live.begin(), live.end(), 0);
  while (live.size() > 1) {
    // convolution on neighbouring live pairs, then pool the odd member into the even one
    for (size_t i = 0; i + 1 < live.size(); i += 2) {
      c.add_rot(live[i]);
      c.add_rot(live[i + 1]);
      c.add_fixed(gates::CNOT().m, {live[i], live[i + 1]}, "CNOT");
    }
    std::vector<int> next;
    for (size_t i = 0; i + 1 < live.size(); i += 2) {
      c.add_fixed(gates::CNOT().m, {live[i + 1], live[i]}, "CNOT");
      c.add_rotation(CircuitOp::Kind::RY, live[i]);
      next.push_back(live[i]);
    }
    live.swap(next);
    ++c.layers;
  }
  return c;
}

double qnn_forward(const ParamCircuit& c, const RVec& theta, const StateVector& in, const Mat& obs) {
  if (in.n != c.n || obs.rows() != in.dim()) throw ArgumentError("QNN dimensions disagree");
  const Vec out = c.apply(theta, in.amps);
  return out.dot(obs * out).real();
}

double qnn_forward(const ParamCircuit& c, const RVec& theta, const DensityMatrix& in, const Mat& obs) {
  if (in.n != c.n || obs.rows() != in.dim()) throw ArgumentError("QNN dimensions disagree");
  const Mat u = c.unitary(theta);
  return (obs * u * in.m * u.adjoint()).trace().real();
}

double qnn_forward(const ParamCircuit& c, const RVec& theta, const DensityMatrix& in, const Observable& obs) {
  return qnn_forward(c, theta, in, obs.m);
}

namespace {
void check_shiftable(const ParamCircuit& c) {
  for (auto& op : c.ops)
    if (op.slot >= 0 && op.kind == CircuitOp::Kind::Fixed)
      throw ArgumentError("parameter shift needs Pauli-rotation generators");
}

template <class In>
RVec shift_grad(const ParamCircuit& c, const RVec& theta, const In& in, const Mat& obs) {
  check_shiftable(c);
  RVec g(c.num_params);
  RVec t = theta;
  for (int j = 0; j < c.num_params; ++j) {
    t(j) = theta(j) + kPi / 2;
    const double fp = qnn_forward(c, t, in, obs);
    t(j) = theta(j) - kPi / 2;
    const double fm = qnn_forward(c, t, in, obs);
    t(j) = theta(j);
    g(j) = 0.5 * (fp - fm);
  }
  return g;
}
}  // namespace

RVec parameter_shift_grad(const ParamCircuit& c, const RVec& theta, const StateVector& in, const Mat& obs) {
  return shift_grad(c, theta, in, obs);
}

RVec parameter_shift_grad(const ParamCircuit& c, const RVec& theta, const DensityMatrix& in, const Mat& obs) {
  return shift_grad(c, theta, in, obs);
}

double parameter_shift_component(const ParamCircuit& c, const RVec& theta, const StateVector& in, const Mat& obs,
                                 int j) {
  if (j < 0 || j >= c.num_params) throw ArgumentError("parameter index out of range");
  check_shiftable(c);
  RVec t = theta;
  t(j) += kPi / 2;
  const double fp = qnn_forward(c, t, in, obs);
  t(j) = theta(j) - kPi / 2;
  return 0.5 * (fp - qnn_forward(c, t, in, obs));
}

RVec finite_difference_grad(const ParamCircuit& c, const RVec& theta, const StateVector& in, const Mat& obs,
                            double h) {
  RVec g(c.num_params);
  RVec t = theta;
  for (int j = 0; j < c.num_params; ++j) {
    t(j) = theta(j) + h;
    const double fp = qnn_forward(c, t, in, obs);
    t(j) = theta(j) - h;
    const double fm = qnn_forward(c, t, in, obs);
    t(j) = theta(j);
    g(j) = (fp - fm) / (2 * h);
  }
  return g;
}

void Adam::step(RVec& theta, const RVec& grad) {
  if (m.size() != theta.size()) {
    m = RVec::Zero(theta.size());
    v = RVec::Zero(theta.size());
    t = 0;
  }
  ++t;
  m = beta1 * m + (1 - beta1) * grad;
  v = beta2 * v + (1 - beta2) * grad.cwiseProduct(grad);
  const double c1 = 1 - std::pow(beta1, double(t)), c2 = 1 - std::pow(beta2, double(t));
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) -= lr * (m(i) / c1) / (std::sqrt(v(i) / c2) + eps);
}

}  // namespace qmlbench
