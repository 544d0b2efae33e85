#include "qmlbench/sim.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace qmlbench {

namespace {
int g_qubit_cap = 14;

double hermitian_min_eig(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline long long bit_of(int q, int n) { return 1LL << (n - 1 - q); }
}  // namespace

int qubit_cap() { return g_qubit_cap; }
void set_qubit_cap(int cap) {
  if (cap < 1 || cap > 30) throw ArgumentError("qubit cap must be in [1, 30]");
  g_qubit_cap = cap;
}
void check_capacity(int n) {
  if (n > g_qubit_cap)
    throw CapacityError(std::to_string(n) + " qubits exceeds the configured cap of " + std::to_string(g_qubit_cap));
}

StateVector::StateVector(Vec a, double tol) {
  const long long d = a.size();
  n = log2_exact(d);
  check_capacity(n);
  const double nrm = a.squaredNorm();
  if (std::abs(nrm - 1.0) > tol) throw ValidationError("state is not normalised (|psi|^2 = " + std::to_string(nrm) + ")");
  amps = std::move(a);
}

StateVector StateVector::basis(int n, long long index) {
  check_capacity(n);
  const long long d = 1LL << n;
  if (index < 0 || index >= d) throw ArgumentError("basis index out of range");
  Vec v = Vec::Zero(d);
  v(index) = 1.0;
  return StateVector(v);
}

DensityMatrix::DensityMatrix(Mat rho, double tol) {
  if (rho.rows() != rho.cols()) throw ArgumentError("density matrix must be square");
  n = log2_exact(rho.rows());
  check_capacity(n);
  if (!is_hermitian(rho, tol)) throw ValidationError("density matrix is not Hermitian");
  const cd tr = rho.trace();
  if (std::abs(tr - 1.0) > tol) throw ValidationError("density matrix trace is " + std::to_string(tr.real()));
  if (hermitian_min_eig(rho) < -1e-9) throw ValidationError("density matrix has a negative eigenvalue");
  m = std::move(rho);
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  DensityMatrix r;
  r.m = psi.amps * psi.amps.adjoint();
  r.n = psi.n;
  return r;
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  check_capacity(n);
  DensityMatrix r;
  const long long d = 1LL << n;
  r.m = Mat::Identity(d, d) / double(d);
  r.n = n;
  return r;
}

QuantumChannel::QuantumChannel(std::vector<Mat> ops, double tol) {
  if (ops.empty()) throw ArgumentError("channel needs at least one Kraus operator");
  const long long d = ops[0].rows();
  n = log2_exact(d);
  Mat acc = Mat::Zero(d, d);
  for (auto& k : ops) {
    if (k.rows() != d || k.cols() != d) throw ArgumentError("Kraus operators must share one square shape");
    acc += k.adjoint() * k;
  }
  if ((acc - Mat::Identity(d, d)).norm() > tol) throw ValidationError("Kraus set is not trace preserving");
  kraus = std::move(ops);
}

Observable::Observable(Mat h, double tol) {
  if (h.rows() != h.cols()) throw ArgumentError("observable must be square");
  n = log2_exact(h.rows());
  if (!is_hermitian(h, tol)) throw ValidationError("observable is not Hermitian");
  m = std::move(h);
}

Observable Observable::from_terms(std::vector<PauliTerm> terms) {
  if (terms.empty()) throw ArgumentError("observable needs at least one Pauli term");
  const size_t n = terms[0].pauli.size();
  Mat acc = Mat::Zero(1LL << n, 1LL << n);
  for (auto& t : terms) {
    if (t.pauli.size() != n) throw ArgumentError("Pauli terms have mixed lengths");
    acc += t.coeff * pauli_string(t.pauli);
  }
  Observable o(acc);
  o.terms = std::move(terms);
  return o;
}

Mat identity(long long dim) { return Mat::Identity(dim, dim); }

bool is_unitary(const Mat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Mat& h, double tol) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  check_capacity(a.n + b.n);
  return StateVector(kron(a.amps, b.amps));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  check_capacity(a.n + b.n);
  DensityMatrix r;
  r.m = kron(a.m, b.m);
  r.n = a.n + b.n;
  return r;
}

Mat tensor(const Mat& a, const Mat& b) {
  check_capacity(ceil_log2(a.rows() * b.rows()));
  return kron(a, b);
}

namespace {
void check_targets(const std::vector<int>& targets, int n, int arity) {
  if ((int)targets.size() != arity)
    throw ArgumentError("gate arity " + std::to_string(arity) + " does not match " + std::to_string(targets.size()) +
                        " targets");
  for (size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= n) throw ArgumentError("target qubit out of range");
    for (size_t j = 0; j < i; ++j)
      if (targets[i] == targets[j]) throw ArgumentError("target qubits must be distinct");
  }
}

// sub-index of the target bits of a full basis index
inline long long gather_bits(long long idx, const std::vector<long long>& masks) {
  long long s = 0;
  const int k = (int)masks.size();
  for (int t = 0; t < k; ++t)
    if (idx & masks[t]) s |= 1LL << (k - 1 - t);
  return s;
}
}  // namespace

Mat embed(const Mat& op, const std::vector<int>& targets, int n) {
  const int k = log2_exact(op.rows());
  check_targets(targets, n, k);
  check_capacity(n);
  const long long d = 1LL << n;
  std::vector<long long> masks(k);
  long long tmask = 0;
  for (int t = 0; t < k; ++t) {
    masks[t] = bit_of(targets[t], n);
    tmask |= masks[t];
  }
  Mat out = Mat::Zero(d, d);
  for (long long r = 0; r < d; ++r) {
    const long long rs = gather_bits(r, masks);
    const long long rest = r & ~tmask;
    for (long long cs = 0; cs < (1LL << k); ++cs) {
      long long c = rest;
      for (int t = 0; t < k; ++t)
        if (cs & (1LL << (k - 1 - t))) c |= masks[t];
      out(r, c) = op(rs, cs);
    }
  }
  return out;
}

void apply_inplace(Vec& amps, int n, const Mat& op, const std::vector<int>& targets) {
  const int k = log2_exact(op.rows());
  check_targets(targets, n, k);
  const long long d = 1LL << n, sub = 1LL << k;
  std::vector<long long> masks(k), offs(sub);
  long long tmask = 0;
  for (int t = 0; t < k; ++t) {
    masks[t] = bit_of(targets[t], n);
    tmask |= masks[t];
  }
  for (long long s = 0; s < sub; ++s) {
    long long o = 0;
    for (int t = 0; t < k; ++t)
      if (s & (1LL << (k - 1 - t))) o |= masks[t];
    offs[s] = o;
  }
  Vec buf(sub), res(sub);
  for (long long base = 0; base < d; ++base) {
    if (base & tmask) continue;
    for (long long s = 0; s < sub; ++s) buf(s) = amps(base | offs[s]);
    res.noalias() = op * buf;
    for (long long s = 0; s < sub; ++s) amps(base | offs[s]) = res(s);
  }
}

StateVector apply_gate(const StateVector& psi, const Gate& g, const std::vector<int>& targets) {
  StateVector out = psi;
  apply_inplace(out.amps, psi.n, g.m, targets);
  return out;
}

DensityMatrix apply_gate(const DensityMatrix& rho, const Gate& g, const std::vector<int>& targets) {
  return apply_unitary(rho, embed(g.m, targets, rho.n));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Mat& u) {
  if (u.rows() != rho.dim()) throw ArgumentError("unitary dimension mismatch");
  DensityMatrix r;
  r.m = u * rho.m * u.adjoint();
  r.n = rho.n;
  return r;
}

namespace channels {

QuantumChannel depolarizing(double p, int n) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("depolarizing probability must lie in [0, 1]");
  const auto strings = all_pauli_strings(n);
  const double four_n = std::pow(4.0, n);
  std::vector<Mat> ops;
  ops.reserve(strings.size());
  for (size_t i = 0; i < strings.size(); ++i) {
    const double w = (i == 0) ? 1.0 - p + p / four_n : p / four_n;
    ops.push_back(std::sqrt(w) * pauli_string(strings[i]));
  }
  return QuantumChannel(ops);
}

QuantumChannel pauli(double pI, double pX, double pY, double pZ) {
  return pauli({pI, pX, pY, pZ}, {"I", "X", "Y", "Z"});
}

QuantumChannel pauli(const std::vector<double>& probs, const std::vector<std::string>& strings) {
  if (probs.size() != strings.size() || probs.empty()) throw ArgumentError("Pauli channel needs one probability per string");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("Pauli channel probabilities must lie in [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("Pauli channel probabilities must sum to 1");
  std::vector<Mat> ops;
  for (size_t i = 0; i < probs.size(); ++i) ops.push_back(std::sqrt(probs[i]) * pauli_string(strings[i]));
  return QuantumChannel(ops);
}

QuantumChannel unitary(const Mat& u) {
  if (!is_unitary(u, 1e-10)) throw ValidationError("channel unitary is not unitary");
  return QuantumChannel({u});
}

}  // namespace channels

DensityMatrix apply_channel(const DensityMatrix& rho, const QuantumChannel& ch) {
  if (ch.kraus.empty() || ch.kraus[0].rows() != rho.dim()) throw ArgumentError("channel dimension mismatch");
  DensityMatrix r;
  r.m = Mat::Zero(rho.dim(), rho.dim());
  for (auto& k : ch.kraus) r.m.noalias() += k * rho.m * k.adjoint();
  r.n = rho.n;
  return r;
}

Dilation stinespring_dilation(const QuantumChannel& ch) {
  const long long ds = ch.kraus[0].rows();
  const int e = std::max(1, ceil_log2((long long)ch.kraus.size()));
  const long long de = 1LL << e, D = ds * de;
  check_capacity(ch.n + e);
  // isometry columns: V|i> = sum_a M_a|i> (x) |a>
  Mat V = Mat::Zero(D, ds);
  for (size_t a = 0; a < ch.kraus.size(); ++a)
    for (long long r = 0; r < ds; ++r)
      for (long long i = 0; i < ds; ++i) V(r * de + (long long)a, i) = ch.kraus[a](r, i);
  // complete to a unitary: orthonormal complement of range(V)
  Mat aug(D, D);
  aug << V, Mat::Identity(D, D).leftCols(D - ds);
  Eigen::HouseholderQR<Mat> qr(aug);
  Mat Q = qr.householderQ();
  Mat U(D, D);
  // columns |i>|0> carry V, the rest are the complement
  long long next = ds;
  for (long long col = 0; col < D; ++col) {
    const long long i = col / de, a = col % de;
    if (a == 0)
      U.col(col) = V.col(i);
    else
      U.col(col) = Q.col(next++);
  }
  return {U, StateVector::basis(e, 0)};
}

DensityMatrix stinespring_apply(const DensityMatrix& rho, const Mat& dilation, const StateVector& env) {
  const long long D = rho.dim() * env.dim();
  if (dilation.rows() != D || dilation.cols() != D) throw ArgumentError("dilation acts on the wrong dimension");
  Mat big = kron(rho.m, Mat(env.amps * env.amps.adjoint()));
  DensityMatrix joint;
  joint.m = dilation * big * dilation.adjoint();
  joint.n = rho.n + env.n;
  std::vector<int> keep(rho.n);
  std::iota(keep.begin(), keep.end(), 0);
  return partial_trace(joint, keep);
}

double expectation(const StateVector& psi, const Observable& o) {
  if (o.m.rows() != psi.dim()) throw ArgumentError("observable dimension mismatch");
  if (!is_hermitian(o.m, 1e-10)) throw ValidationError("observable is not Hermitian");
  return (psi.amps.adjoint() * o.m * psi.amps)(0, 0).real();
}

double expectation(const DensityMatrix& rho, const Observable& o) {
  if (o.m.rows() != rho.dim()) throw ArgumentError("observable dimension mismatch");
  if (!is_hermitian(o.m, 1e-10)) throw ValidationError("observable is not Hermitian");
  return (rho.m * o.m).trace().real();
}

std::vector<long long> sample_counts(const std::vector<double>& probs, long long shots, Rng& rng) {
  // sequential binomial draws give an exact multinomial sample
  std::vector<long long> counts(probs.size(), 0);
  long long left = shots;
  double mass = 1.0;
  for (size_t i = 0; i < probs.size() && left > 0; ++i) {
    if (i + 1 == probs.size()) {
      counts[i] = left;
      break;
    }
    double p = mass > 0 ? std::clamp(probs[i] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<long long> bin(left, p);
    counts[i] = bin(rng.engine());
    left -= counts[i];
    mass -= probs[i];
  }
  return counts;
}

std::vector<double> measure_projective(const DensityMatrix& rho, const std::vector<Mat>& projectors, long long shots,
                                       Rng& rng) {
  if (projectors.empty()) throw ArgumentError("no projectors given");
  const long long d = rho.dim();
  Mat acc = Mat::Zero(d, d);
  std::vector<double> p;
  for (auto& P : projectors) {
    if (P.rows() != d) throw ArgumentError("projector dimension mismatch");
    acc += P;
    p.push_back(std::max(0.0, (P * rho.m).trace().real()));
  }
  if ((acc - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9) throw ValidationError("projectors are not complete");
  if (shots < 0) throw ArgumentError("shots must be non-negative");
  if (shots == 0) return p;
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= s;
  auto c = sample_counts(p, shots, rng);
  return std::vector<double>(c.begin(), c.end());
}

std::vector<double> measure_projective(const StateVector& psi, const std::vector<Mat>& projectors, long long shots,
                                       Rng& rng) {
  return measure_projective(DensityMatrix::from_pure(psi), projectors, shots, rng);
}

std::vector<double> probabilities(const StateVector& psi) {
  std::vector<double> p(psi.dim());
  for (long long i = 0; i < psi.dim(); ++i) p[i] = std::norm(psi.amps(i));
  return p;
}

std::vector<double> probabilities(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  for (long long i = 0; i < rho.dim(); ++i) p[i] = std::max(0.0, rho.m(i, i).real());
  return p;
}

std::vector<Mat> computational_projectors(int n) {
  const long long d = 1LL << n;
  std::vector<Mat> out;
  for (long long i = 0; i < d; ++i) {
    Mat P = Mat::Zero(d, d);
    P(i, i) = 1.0;
    out.push_back(P);
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const int n = rho.n;
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= n) throw ArgumentError("partial_trace: qubit index out of range");
    for (size_t j = 0; j < i; ++j)
      if (keep[i] == keep[j]) throw ArgumentError("partial_trace: duplicate qubit");
  }
  const int k = (int)keep.size();
  std::vector<long long> masks(k);
  long long kmask = 0;
  for (int t = 0; t < k; ++t) {
    masks[t] = bit_of(keep[t], n);
    kmask |= masks[t];
  }
  const long long d = rho.dim(), dk = 1LL << k;
  Mat out = Mat::Zero(dk, dk);
  for (long long r = 0; r < d; ++r) {
    const long long rk = gather_bits(r, masks);
    const long long rt = r & ~kmask;
    for (long long c = 0; c < d; ++c) {
      if ((c & ~kmask) != rt) continue;
      out(rk, gather_bits(c, masks)) += rho.m(r, c);
    }
  }
  DensityMatrix res;
  res.m = out;
  res.n = k;
  return res;
}

double purity(const DensityMatrix& rho) { return (rho.m * rho.m).trace().real(); }

double trace_distance(const Mat& a, const Mat& b) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity_pure(const StateVector& psi, const DensityMatrix& rho) {
  return (psi.amps.adjoint() * rho.m * psi.amps)(0, 0).real();
}

Mat haar_random_unitary(long long dim, Rng& rng) {
  if (dim < 1) throw ArgumentError("dimension must be at least 1");
  Mat g(dim, dim);
  const double s = 1.0 / std::sqrt(2.0);
  for (long long i = 0; i < dim; ++i)
    for (long long j = 0; j < dim; ++j) g(i, j) = cd(rng.normal() * s, rng.normal() * s);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phase freedom so the distribution is exactly Haar
  for (long long i = 0; i < dim; ++i) {
    const cd rii = r(i, i);
    const double a = std::abs(rii);
    q.col(i) *= (a > 0 ? rii / a : cd(1.0));
  }
  return q;
}

StateVector random_state(int n, Rng& rng) {
  check_capacity(n);
  const long long d = 1LL << n;
  Vec v(d);
  for (long long i = 0; i < d; ++i) v(i) = cd(rng.normal(), rng.normal());
  v.normalize();
  return StateVector(v);
}

DensityMatrix random_density(int n, Rng& rng, int rank) {
  check_capacity(n);
  const long long d = 1LL << n;
  const long long r = rank <= 0 ? d : rank;
  Mat g(d, r);
  for (long long i = 0; i < d; ++i)
    for (long long j = 0; j < r; ++j) g(i, j) = cd(rng.normal(), rng.normal());
  Mat rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(rho);
}

Mat random_hermitian(long long dim, Rng& rng) {
  Mat g(dim, dim);
  for (long long i = 0; i < dim; ++i)
    for (long long j = 0; j < dim; ++j) g(i, j) = cd(rng.normal(), rng.normal());
  return 0.5 * (g + g.adjoint());
}

}  // namespace qmlbench
