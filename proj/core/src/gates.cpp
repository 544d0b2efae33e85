#include <cmath>

#include "qmlbench/sim.hpp"

namespace qmlbench {

namespace {
const cd I_(0.0, 1.0);

Gate make(Mat m, std::string label, std::optional<double> p = std::nullopt) {
  Gate g;
  g.arity = log2_exact(m.rows());
  g.m = std::move(m);
  g.label = std::move(label);
  g.param = p;
  return g;
}
}  // namespace

Mat pauli(char p) {
  Mat m(2, 2);
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -I_, I_, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw ArgumentError(std::string("invalid Pauli letter '") + p + "'");
  }
  return m;
}

bool is_valid_pauli(const std::string& s) {
  for (char c : s)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') return false;
  return !s.empty();
}

Mat pauli_string(const std::string& s) {
  if (!is_valid_pauli(s)) throw ArgumentError("invalid Pauli string '" + s + "'");
  Mat m = pauli(s[0]);
  for (size_t i = 1; i < s.size(); ++i) m = kron(m, pauli(s[i]));
  return m;
}

std::vector<std::string> all_pauli_strings(int n) {
  std::vector<std::string> out{""};
  for (int q = 0; q < n; ++q) {
    std::vector<std::string> next;
    next.reserve(out.size() * 4);
    for (auto& s : out)
      for (char c : {'I', 'X', 'Y', 'Z'}) next.push_back(s + c);
    out.swap(next);
  }
  return out;
}

namespace gates {

Gate I1() { return make(pauli('I'), "I"); }
Gate X() { return make(pauli('X'), "X"); }
Gate Y() { return make(pauli('Y'), "Y"); }
Gate Z() { return make(pauli('Z'), "Z"); }

Gate H() {
  Mat m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return make(m, "H");
}

Gate S() {
  Mat m(2, 2);
  m << 1, 0, 0, I_;
  return make(m, "S");
}

Gate Sdg() {
  Mat m(2, 2);
  m << 1, 0, 0, -I_;
  return make(m, "Sdg");
}

Gate T() {
  Mat m(2, 2);
  m << 1, 0, 0, std::exp(I_ * (kPi / 4));
  return make(m, "T");
}

// exp(-i t sigma / 2)
Gate RX(double t) {
  Mat m(2, 2);
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  m << c, -I_ * s, -I_ * s, c;
  return make(m, "RX", t);
}

Gate RY(double t) {
  Mat m(2, 2);
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  m << c, -s, s, c;
  return make(m, "RY", t);
}

Gate RZ(double t) {
  Mat m(2, 2);
  m << std::exp(-I_ * (t / 2)), 0, 0, std::exp(I_ * (t / 2));
  return make(m, "RZ", t);
}

Gate Rot(double phi, double theta, double omega) {
  Mat m = RZ(omega).m * RY(theta).m * RZ(phi).m;
  return make(m, "Rot");
}

Gate CNOT() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return make(m, "CNOT");
}

Gate CZ() {
  Mat m = Mat::Identity(4, 4);
  m(3, 3) = -1;
  return make(m, "CZ");
}

Gate SWAP() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1;
  m(1, 2) = m(2, 1) = 1;
  return make(m, "SWAP");
}

Gate from_matrix(Mat u, std::string label, double tol) {
  if (u.rows() != u.cols()) throw ArgumentError("gate matrix must be square");
  if (!is_unitary(u, tol)) throw ValidationError("gate matrix is not unitary");
  return make(std::move(u), std::move(label));
}

}  // namespace gates
}  // namespace qmlbench
