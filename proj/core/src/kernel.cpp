#include "qmlbench/kernel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace qmlbench {

double classical_kernel(const ClassicalKernel& k, const RVec& x, const RVec& y) {
  if (x.size() != y.size()) throw ArgumentError("kernel inputs differ in length");
  switch (k.kind) {
    case ClassicalKernel::Kind::polynomial:
      if (k.m < 1) throw ArgumentError("polynomial kernel degree must be >= 1");
      return std::pow(x.dot(y) + k.c, k.m);
    case ClassicalKernel::Kind::gaussian:
      if (!(k.sigma > 0)) throw ArgumentError("gaussian kernel width must be positive");
      return std::exp(-(x - y).squaredNorm() / (2 * k.sigma * k.sigma));
    case ClassicalKernel::Kind::sigmoid:
      return std::tanh(k.a * x.dot(y) + k.b);
  }
  return 0;
}

FeatureMap parse_feature_map(const std::string& s) {
  if (s == "basis") return FeatureMap::basis;
  if (s == "amplitude") return FeatureMap::amplitude;
  if (s == "angleX") return FeatureMap::angleX;
  if (s == "angleY") return FeatureMap::angleY;
  if (s == "single_qubit_rx" || s == "rx") return FeatureMap::single_qubit_rx;
  throw ArgumentError("unknown feature map '" + s + "'");
}

std::string to_string(FeatureMap m) {
  switch (m) {
    case FeatureMap::basis: return "basis";
    case FeatureMap::amplitude: return "amplitude";
    case FeatureMap::angleX: return "angleX";
    case FeatureMap::angleY: return "angleY";
    case FeatureMap::single_qubit_rx: return "single_qubit_rx";
  }
  return "?";
}

StateVector feature_state(FeatureMap map, const RVec& x) {
  switch (map) {
    case FeatureMap::basis: {
      std::vector<int> bits;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x(i) != 0.0 && x(i) != 1.0) throw ArgumentError("basis map takes binary inputs");
        bits.push_back((int)x(i));
      }
      return encode_basis(bits).state;
    }
    case FeatureMap::amplitude: return encode_amplitude(x).state;
    case FeatureMap::angleX: return encode_angle(x, 'X').state;
    case FeatureMap::angleY: return encode_angle(x, 'Y').state;
    case FeatureMap::single_qubit_rx:
      if (x.size() != 1) throw ArgumentError("single-qubit RX map takes scalar inputs");
      return encode_angle(x, 'X').state;
  }
  throw ArgumentError("unknown feature map");
}

namespace {
bool is_product_map(FeatureMap m) { return m == FeatureMap::angleX || m == FeatureMap::angleY; }

// angle maps prepare product states, so the overlap factorises qubit by qubit
// and wide inputs never need the full register
double product_overlap(FeatureMap map, const RVec& x, const RVec& y) {
  double k = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const StateVector a = feature_state(map, x.segment(i, 1)), b = feature_state(map, y.segment(i, 1));
    k *= std::norm(a.amps.dot(b.amps));
  }
  return std::min(1.0, k);
}
}  // namespace

double quantum_kernel(FeatureMap map, const RVec& x, const RVec& y) {
  if (x.size() != y.size()) throw ArgumentError("kernel inputs differ in length");
  if (is_product_map(map)) return product_overlap(map, x, y);
  const StateVector a = feature_state(map, x), b = feature_state(map, y);
  return std::min(1.0, std::norm(a.amps.dot(b.amps)));
}

double quantum_kernel_swap_test(FeatureMap map, const RVec& x, const RVec& y, long long shots, Rng& rng) {
  if (shots <= 0) throw ArgumentError("shot-based kernel needs shots > 0");
  const double k = quantum_kernel(map, x, y);
  // ancilla reads 0 with probability (1 + k)/2
  auto c = sample_counts({0.5 * (1 + k), 0.5 * (1 - k)}, shots, rng);
  return std::clamp(2.0 * double(c[0]) / double(shots) - 1.0, 0.0, 1.0);
}

double quantum_kernel_adjoint(FeatureMap map, const RVec& x, const RVec& y, long long shots, Rng& rng) {
  if (shots <= 0) throw ArgumentError("shot-based kernel needs shots > 0");
  const double k = quantum_kernel(map, x, y);
  // U(x')^dagger U(x)|0>, all-zeros outcome
  auto c = sample_counts({k, 1 - k}, shots, rng);
  return double(c[0]) / double(shots);
}

double rx_kernel_half_angle(const RVec& x, const RVec& y) {
  double p = 1;
  for (Eigen::Index i = 0; i < x.size(); ++i) p *= std::pow(std::cos((x(i) - y(i)) / 2), 2);
  return p;
}

double rx_kernel_full_angle(const RVec& x, const RVec& y) {
  double p = 1;
  for (Eigen::Index i = 0; i < x.size(); ++i) p *= std::pow(std::abs(std::cos(x(i) - y(i))), 2);
  return p;
}

RMat kernel_matrix(const Dataset& data, FeatureMap map) {
  const size_t n = data.size();
  if (n == 0) throw ArgumentError("kernel matrix of an empty dataset");
  if (is_product_map(map)) {
    RMat K(n, n);
    for (size_t i = 0; i < n; ++i) {
      K(i, i) = 1.0;
      for (size_t j = 0; j < i; ++j) {
        if (data[i].size() != data[j].size()) throw ArgumentError("kernel inputs differ in length");
        K(i, j) = K(j, i) = product_overlap(map, data[i], data[j]);
      }
    }
    return K;
  }
  std::vector<StateVector> st;
  for (auto& x : data) st.push_back(feature_state(map, x));
  RMat K(n, n);
  for (size_t i = 0; i < n; ++i) {
    K(i, i) = 1.0;
    for (size_t j = 0; j < i; ++j) K(i, j) = K(j, i) = std::norm(st[i].amps.dot(st[j].amps));
  }
  return K;
}

RMat kernel_matrix(const Dataset& data, const ClassicalKernel& k) {
  const size_t n = data.size();
  if (n == 0) throw ArgumentError("kernel matrix of an empty dataset");
  RMat K(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j <= i; ++j) K(i, j) = K(j, i) = classical_kernel(k, data[i], data[j]);
  return K;
}

namespace {
bool nearly_singular(const RMat& m) {
  Eigen::SelfAdjointEigenSolver<RMat> es(m, Eigen::EigenvaluesOnly);
  const RVec ev = es.eigenvalues();
  return ev.minCoeff() <= 1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff());
}
}  // namespace

RidgeModel ridge_fit(const RMat& K, const RVec& y, double lambda) {
  if (lambda < 0) throw ArgumentError("ridge lambda must be non-negative");
  if (K.rows() != K.cols() || K.rows() != y.size()) throw ArgumentError("ridge dimensions disagree");
  const RMat A = K + lambda * RMat::Identity(K.rows(), K.cols());
  if (nearly_singular(A)) throw SingularityError("K + lambda I is singular");
  RidgeModel m;
  m.a = A.ldlt().solve(y);
  m.lambda = lambda;
  return m;
}

double ridge_predict(const RidgeModel& m, const RVec& kvec) {
  if (kvec.size() != m.a.size()) throw ArgumentError("kernel vector has the wrong length");
  return kvec.dot(m.a);
}

Complexity model_complexity(const RMat& K, const RVec& y) {
  if (K.rows() != y.size()) throw ArgumentError("model complexity dimensions disagree");
  Complexity c;
  if (nearly_singular(K)) {
    c.pinv_fallback = true;
    Eigen::SelfAdjointEigenSolver<RMat> es(K);
    const RVec ev = es.eigenvalues();
    const double cut = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    const RVec z = es.eigenvectors().transpose() * y;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i) > cut) c.value += z(i) * z(i) / ev(i);
    return c;
  }
  c.value = y.dot(K.ldlt().solve(y));
  return c;
}

RMat normalize_trace(const RMat& K) {
  const double tr = K.trace();
  if (!(tr > 0)) throw DegenerateError("kernel matrix has non-positive trace");
  return K * (double(K.rows()) / tr);
}

RMat sqrt_psd(const RMat& K) {
  Eigen::SelfAdjointEigenSolver<RMat> es(K);
  RVec ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

namespace {
struct GInternals {
  RMat KC, KQ, sq, Minner;
  double reg = 0;
};

GInternals g_internals(const RMat& KC0, const RMat& KQ0) {
  if (KC0.rows() != KQ0.rows() || KC0.rows() != KC0.cols() || KQ0.rows() != KQ0.cols())
    throw ArgumentError("kernel matrices must be square and the same size");
  GInternals g;
  g.KC = normalize_trace(KC0);
  g.KQ = normalize_trace(KQ0);
  RMat kc = g.KC;
  if (nearly_singular(kc)) {
    g.reg = 1e-10;
    kc += g.reg * RMat::Identity(kc.rows(), kc.cols());
  }
  g.sq = sqrt_psd(g.KQ);
  g.Minner = g.sq * kc.ldlt().solve(g.sq);
  g.Minner = 0.5 * (g.Minner + g.Minner.transpose());
  return g;
}
}  // namespace

GeometricDifference geometric_difference(const RMat& KC, const RMat& KQ) {
  const GInternals gi = g_internals(KC, KQ);
  Eigen::SelfAdjointEigenSolver<RMat> es(gi.Minner, Eigen::EigenvaluesOnly);
  GeometricDifference g;
  g.g = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  g.reg = gi.reg;
  return g;
}

std::vector<int> median_threshold(const RVec& y) {
  std::vector<double> s(y.data(), y.data() + y.size());
  std::sort(s.begin(), s.end());
  const size_t n = s.size();
  const double med = n % 2 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
  std::vector<int> pm(n);
  for (size_t i = 0; i < n; ++i) pm[i] = y(i) > med ? 1 : -1;
  return pm;
}

AdversarialLabels adversarial_dataset(const RMat& KC, const RMat& KQ) {
  const GInternals gi = g_internals(KC, KQ);
  Eigen::SelfAdjointEigenSolver<RMat> es(gi.Minner);
  const Eigen::Index top = es.eigenvalues().size() - 1;
  RVec v = es.eigenvectors().col(top);
  // deterministic sign: largest component positive
  Eigen::Index imax;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
  AdversarialLabels out;
  out.y = gi.sq * v;
  out.g2 = es.eigenvalues()(top);
  RMat kc = gi.KC;
  if (gi.reg > 0) kc += gi.reg * RMat::Identity(kc.rows(), kc.cols());
  out.s_c = out.y.dot(kc.ldlt().solve(out.y));
  out.s_q = model_complexity(gi.KQ, out.y).value;
  out.ratio = out.s_c / out.s_q;
  out.pm = median_threshold(out.y);
  return out;
}

RiskBounds kernel_risk_bounds(const RMat& K, const RVec& y, double lambda, double delta) {
  if (lambda < 0) throw ArgumentError("lambda must be non-negative");
  if (!(delta > 0 && delta < 1)) throw ArgumentError("delta must lie in (0, 1)");
  const double n = double(K.rows());
  const RMat A = K + lambda * RMat::Identity(K.rows(), K.cols());
  if (nearly_singular(A)) throw SingularityError("K + lambda I is singular");
  const RVec z = A.ldlt().solve(y);  // (K+lI)^-1 y
  RiskBounds r;
  r.train_bound = std::sqrt(lambda * lambda * z.squaredNorm() / n);
  r.gen_quadratic = z.dot(K * z) / n;
  r.gen_bound = std::sqrt(std::max(0.0, r.gen_quadratic)) + std::sqrt(std::log(1.0 / delta) / n);
  r.gen_detailed = 5.0 * r.gen_quadratic + 3.0 * std::sqrt(std::log(2.0 / delta) / (2.0 * n));
  return r;
}

int c2qe_qubits(long long d) {
  int n = 0;
  long long four = 1;
  while (four < d + 1) {
    four *= 4;
    ++n;
  }
  return std::max(n, 1);
}

namespace {
RVec c2qe_check(const RVec& r, int& n) {
  if (r.size() == 0) throw ArgumentError("C2QE input is empty");
  if (std::abs(r.lpNorm<1>() - 1.0) > 1e-10) throw ArgumentError("C2QE input must have unit 1-norm");
  n = c2qe_qubits(r.size());
  check_capacity(n);
  RVec p = RVec::Zero((1LL << (2 * n)) - 1);
  p.head(r.size()) = r;
  return p;
}
}  // namespace

Mat c2qe_embed(const RVec& r) {
  int n;
  const RVec p = c2qe_check(r, n);
  const auto strings = all_pauli_strings(n);  // strings[0] is the identity
  const long long d = 1LL << n;
  Mat rho = Mat::Identity(d, d);
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) != 0.0) rho += p(i) * pauli_string(strings[i + 1]);
  return rho / double(d);
}

Mat c2qe_sample(const RVec& r, long long draws, Rng& rng) {
  if (draws <= 0) throw ArgumentError("need at least one draw");
  int n;
  const RVec p = c2qe_check(r, n);
  const auto strings = all_pauli_strings(n);
  const long long d = 1LL << n;
  std::vector<double> w(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) w[i] = std::abs(p(i));
  auto counts = sample_counts(w, draws, rng);
  Mat rho = Mat::Zero(d, d);
  const Mat id = Mat::Identity(d, d);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (counts[i] == 0) continue;
    const double sgn = p(i) >= 0 ? 1.0 : -1.0;
    rho += double(counts[i]) * (id + sgn * pauli_string(strings[i + 1])) / double(d);
  }
  return rho / double(draws);
}

cd FourierTable::at(const std::vector<int>& s, const std::vector<int>& t) const {
  long long idx = 0;
  for (int i = 0; i < d; ++i) idx = idx * 3 + (s[i] + 1);
  for (int i = 0; i < d; ++i) idx = idx * 3 + (t[i] + 1);
  return c[idx];
}

double FourierTable::eval(const RVec& x, const RVec& y) const {
  cd acc = 0;
  const long long total = (long long)c.size();
  for (long long idx = 0; idx < total; ++idx) {
    long long r = idx;
    double phase = 0;
    for (int i = d - 1; i >= 0; --i) {
      phase += double(r % 3 - 1) * y(i);
      r /= 3;
    }
    for (int i = d - 1; i >= 0; --i) {
      phase += double(r % 3 - 1) * x(i);
      r /= 3;
    }
    acc += c[idx] * std::exp(cd(0, phase));
  }
  return acc.real();
}

FourierTable kernel_fourier_decompose(FeatureMap map, int d, int grid) {
  if (map != FeatureMap::angleX && map != FeatureMap::angleY && map != FeatureMap::single_qubit_rx)
    throw ArgumentError("Fourier table needs an angle-encoding map");
  if (d < 1 || d > 3) throw ArgumentError("Fourier table supports 1 <= d <= 3");
  if (map == FeatureMap::single_qubit_rx && d != 1) throw ArgumentError("single-qubit map has d = 1");
  FourierTable ft;
  ft.d = d;
  // 1D design over {-1,0,1} on a uniform grid; the 2d-fold product inherits its condition number
  Mat v(grid, 3);
  for (int g = 0; g < grid; ++g)
    for (int f = -1; f <= 1; ++f) v(g, f + 1) = std::exp(cd(0, f * 2 * kPi * g / grid));
  Eigen::JacobiSVD<Mat> svd(v);
  const RVec sv = svd.singularValues();
  const double c1 = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  ft.condition = std::pow(c1, 2 * d);
  if (!(ft.condition <= 1e8)) throw NumericError("Fourier fit is ill-conditioned (condition " + std::to_string(ft.condition) + ")");

  const int D = 2 * d;
  long long npts = 1;
  for (int i = 0; i < D; ++i) npts *= grid;
  std::vector<double> kv(npts);
  auto coords = [&](long long p, RVec& x, RVec& y) {
    for (int i = D - 1; i >= 0; --i) {
      const double val = 2 * kPi * double(p % grid) / grid;
      if (i < d)
        x(i) = val;
      else
        y(i - d) = val;
      p /= grid;
    }
  };
  RVec x(d), y(d);
  for (long long p = 0; p < npts; ++p) {
    coords(p, x, y);
    kv[p] = quantum_kernel(map, x, y);
  }
  // least squares on an orthogonal design reduces to the DFT at frequencies -1,0,1
  long long ncoef = 1;
  for (int i = 0; i < D; ++i) ncoef *= 3;
  ft.c.assign(ncoef, 0.0);
  for (long long idx = 0; idx < ncoef; ++idx) {
    std::vector<int> f(D);
    long long r = idx;
    for (int i = D - 1; i >= 0; --i) {
      f[i] = int(r % 3) - 1;
      r /= 3;
    }
    cd acc = 0;
    for (long long p = 0; p < npts; ++p) {
      long long q = p;
      double phase = 0;
      for (int i = D - 1; i >= 0; --i) {
        phase += f[i] * 2 * kPi * double(q % grid) / grid;
        q /= grid;
      }
      acc += kv[p] * std::exp(cd(0, -phase));
    }
    ft.c[idx] = acc / double(npts);
  }
  for (long long p = 0; p < npts; ++p) {
    coords(p, x, y);
    ft.residual = std::max(ft.residual, std::abs(ft.eval(x, y) - kv[p]));
  }
  return ft;
}

}  // namespace qmlbench
