#include "qmlbench/readout.hpp"

#include <cmath>

namespace qmlbench {

std::string to_string(EncodingKind k) {
  switch (k) {
    case EncodingKind::basis: return "basis";
    case EncodingKind::amplitude: return "amplitude";
    case EncodingKind::angle: return "angle";
    case EncodingKind::qram: return "qram";
  }
  return "?";
}

EncodedInput encode_basis(const std::vector<int>& bits) {
  if (bits.empty()) throw ArgumentError("basis encoding needs at least one bit");
  long long idx = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw ArgumentError("basis encoding takes entries in {0,1}");
    idx = (idx << 1) | b;
  }
  EncodedInput e;
  e.state = StateVector::basis((int)bits.size(), idx);
  e.kind = EncodingKind::basis;
  e.source.assign(bits.begin(), bits.end());
  return e;
}

EncodedInput encode_amplitude(const Vec& x) {
  const double nrm = x.norm();
  if (x.size() == 0 || !(nrm > 0)) throw ArgumentError("amplitude encoding of a zero vector");
  const long long d = next_pow2(std::max<long long>(2, x.size()));
  Vec v = Vec::Zero(d);
  v.head(x.size()) = x / nrm;
  EncodedInput e;
  e.state = StateVector(v);
  e.kind = EncodingKind::amplitude;
  for (Eigen::Index i = 0; i < x.size(); ++i) e.source.push_back(x(i).real());
  return e;
}

EncodedInput encode_amplitude(const RVec& x) { return encode_amplitude(Vec(x.cast<cd>())); }

EncodedInput encode_angle(const RVec& x, char axis) {
  if (x.size() == 0) throw ArgumentError("angle encoding needs at least one feature");
  const int n = (int)x.size();
  check_capacity(n);
  EncodedInput e;
  Vec v = Vec::Ones(1);
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(x(i))) throw ArgumentError("angle encoding input is not finite");
    if (x(i) < 0 || x(i) >= 2 * kPi) e.out_of_range = true;
    Gate g;
    switch (axis) {
      case 'X': g = gates::RX(x(i)); break;
      case 'Y': g = gates::RY(x(i)); break;
      case 'Z': g = gates::RZ(x(i)); break;
      default: throw ArgumentError("angle encoding axis must be X, Y or Z");
    }
    v = kron(v, Vec(g.m.col(0)));
    e.source.push_back(x(i));
  }
  e.state = StateVector(v);
  e.kind = EncodingKind::angle;
  return e;
}

EncodedInput encode_qram(const std::vector<std::vector<int>>& dataset) {
  if (dataset.empty()) throw ArgumentError("QRAM encoding of an empty dataset");
  const size_t m = dataset.size(), len = dataset[0].size();
  if (len == 0) throw ArgumentError("QRAM items must be non-empty");
  const int na = std::max(1, ceil_log2((long long)m));
  const int n = na + (int)len;
  check_capacity(n);
  Vec v = Vec::Zero(1LL << n);
  EncodedInput e;
  for (size_t j = 0; j < m; ++j) {
    if (dataset[j].size() != len) throw ArgumentError("QRAM items must share one length");
    long long x = 0;
    for (int b : dataset[j]) {
      if (b != 0 && b != 1) throw ArgumentError("QRAM items are bit vectors");
      x = (x << 1) | b;
      e.source.push_back(b);
    }
    v((long long)j << len | x) += 1.0 / std::sqrt(double(m));
  }
  e.state = StateVector(v);
  e.kind = EncodingKind::qram;
  return e;
}

Mat pauli_basis_rotation(const std::string& pauli) {
  if (!is_valid_pauli(pauli)) throw ArgumentError("invalid Pauli string '" + pauli + "'");
  const Mat h = gates::H().m;
  const Mat hs = h * gates::Sdg().m;  // S^dagger first, then H
  Mat u = Mat::Ones(1, 1);
  for (char c : pauli) u = kron(u, c == 'X' ? h : c == 'Y' ? hs : Mat(Mat::Identity(2, 2)));
  return u;
}

double estimate_pauli_expectation(const DensityMatrix& rho, const std::string& pauli, long long shots, Rng& rng) {
  if (!is_valid_pauli(pauli)) throw ArgumentError("invalid Pauli string '" + pauli + "'");
  if ((int)pauli.size() != rho.n) throw ArgumentError("Pauli string length does not match the qubit count");
  if (shots < 0) throw ArgumentError("shots must be non-negative");
  if (shots == 0) return (rho.m * pauli_string(pauli)).trace().real();
  const Mat u = pauli_basis_rotation(pauli);
  const Mat rot = u * rho.m * u.adjoint();
  std::vector<double> p(rho.dim());
  double s = 0;
  for (long long i = 0; i < rho.dim(); ++i) s += (p[i] = std::max(0.0, rot(i, i).real()));
  for (auto& x : p) x /= s;
  auto counts = sample_counts(p, shots, rng);
  long long mask = 0;
  for (int q = 0; q < rho.n; ++q)
    if (pauli[q] != 'I') mask |= 1LL << (rho.n - 1 - q);
  long long acc = 0;
  for (long long b = 0; b < rho.dim(); ++b) acc += (__builtin_popcountll(b & mask) & 1) ? -counts[b] : counts[b];
  return double(acc) / double(shots);
}

double estimate_pauli_expectation(const StateVector& psi, const std::string& pauli, long long shots, Rng& rng) {
  return estimate_pauli_expectation(DensityMatrix::from_pure(psi), pauli, shots, rng);
}

double estimate_observable(const DensityMatrix& rho, const Observable& obs, long long shots_per_term, Rng& rng) {
  if (!obs.terms) throw ValidationError("observable has no Pauli decomposition");
  double acc = 0;
  size_t k = 0;
  for (auto& t : *obs.terms) {
    Rng sub = rng.derive(k++);
    acc += t.coeff * estimate_pauli_expectation(rho, t.pauli, shots_per_term, sub);
  }
  return acc;
}

std::vector<PauliTerm> pauli_decompose(const Mat& h, double drop_tol) {
  if (h.rows() != h.cols()) throw ArgumentError("pauli_decompose needs a square matrix");
  const int n = log2_exact(h.rows());
  if (!is_hermitian(h, 1e-10)) throw ValidationError("pauli_decompose needs a Hermitian matrix");
  std::vector<PauliTerm> out;
  const double d = double(h.rows());
  for (auto& s : all_pauli_strings(n)) {
    const double c = (h * pauli_string(s)).trace().real() / d;
    if (std::abs(c) > drop_tol) out.push_back({c, s});
  }
  return out;
}

}  // namespace qmlbench
