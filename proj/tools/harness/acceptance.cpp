#include "acceptance.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qmlbench/blockenc.hpp"
#include "qmlbench/dataset.hpp"
#include "qmlbench/grover.hpp"
#include "qmlbench/learners.hpp"
#include "qmlbench/qgan.hpp"
#include "qmlbench/qtransformer.hpp"

namespace qmlbench::harness {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

Check verdict(bool ok, const std::string& detail) { return {ok, detail}; }

Mat rand_complex(long long d, Rng& r) {
  Mat m(d, d);
  for (long long i = 0; i < d; ++i)
    for (long long j = 0; j < d; ++j) m(i, j) = cd(r.normal(), r.normal());
  return m;
}

RMat rand_real(long long rows, long long cols, Rng& r, double s = 1.0) {
  RMat m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = s * r.normal();
  return m;
}

double spec_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

// ---- core-sim ----

Check channel_algebra(const std::string&) {
  double worst = 0;
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    const DensityMatrix out = apply_channel(DensityMatrix::from_pure(StateVector::zero(1)), channels::depolarizing(p));
    Mat want = Mat::Zero(2, 2);
    want(0, 0) = 1 - p / 2;
    want(1, 1) = p / 2;
    worst = std::max(worst, (out.m - want).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(purity(out) - (1 - p + p * p / 2)));
  }
  return verdict(worst <= 1e-12, "max error " + fmt(worst));
}

Check dilation_equivalence(const std::string&) {
  Rng rng(2);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 2;
    const DensityMatrix rho = random_density(n, rng, i % 3 == 0 ? 1 : 0);
    QuantumChannel ch;
    if (i % 4 < 2) {
      ch = channels::depolarizing(rng.uniform(), n);
    } else if (n == 1) {
      RVec p(4);
      for (int k = 0; k < 4; ++k) p(k) = rng.uniform();
      p /= p.sum();
      ch = channels::pauli(p(0), p(1), p(2), p(3));
    } else {
      std::vector<double> p(4);
      for (auto& v : p) v = rng.uniform();
      const double s = p[0] + p[1] + p[2] + p[3];
      for (auto& v : p) v /= s;
      ch = channels::pauli(p, {"II", "XZ", "YY", "ZI"});
    }
    const Dilation dil = stinespring_dilation(ch);
    const DensityMatrix a = stinespring_apply(rho, dil.u, dil.env), b = apply_channel(rho, ch);
    worst = std::max(worst, (a.m - b.m).cwiseAbs().maxCoeff());
  }
  return verdict(worst <= 1e-10, "max error " + fmt(worst) + " over 200 states");
}

Check haar_moments(const std::string&) {
  Rng rng(3);
  const int N = 10000;
  bool ok = true;
  std::string detail;
  for (long long d : {2LL, 4LL}) {
    // |U00|^2, |U00|^4, |U00 U11|^2, Re(U00 conj U10): first and second moment identities
    std::vector<double> s1(4, 0), s2(4, 0);
    const double expect[4] = {1.0 / d, 2.0 / (d * (d + 1.0)), 1.0 / (d * d - 1.0), 0.0};
    for (int t = 0; t < N; ++t) {
      const Mat u = haar_random_unitary(d, rng);
      const double a = std::norm(u(0, 0));
      const double v[4] = {a, a * a, a * std::norm(u(1, 1)), (u(0, 0) * std::conj(u(1, 0))).real()};
      for (int k = 0; k < 4; ++k) {
        s1[k] += v[k];
        s2[k] += v[k] * v[k];
      }
    }
    double worst_z = 0;
    for (int k = 0; k < 4; ++k) {
      const double mean = s1[k] / N, var = s2[k] / N - mean * mean;
      const double se = std::sqrt(std::max(var, 0.0) / N);
      const double z = std::abs(mean - expect[k]) / se;
      worst_z = std::max(worst_z, z);
      ok = ok && z <= 3.0;
    }
    detail += "d=" + std::to_string(d) + " max z " + fmt(worst_z) + "; ";
  }
  return verdict(ok, detail);
}

// ---- block encodings ----

Check blockenc_demo(const std::string&) {
  Mat A(4, 4);
  A << .36, 0, 0, .64, 0, -.36, .64, 0, 0, .64, .36, 0, .64, 0, 0, -.36;
  std::vector<double> cs;
  std::vector<Mat> us;
  for (auto& t : pauli_decompose(A)) {
    cs.push_back(t.coeff);
    us.push_back(pauli_string(t.pauli));
  }
  const double lcu = (extract(be_lcu(cs, us)) - A).cwiseAbs().maxCoeff();
  Rng r(4);
  double e = 0;
  for (int t = 0; t < 100; ++t) {
    const long long d = 1LL << (1 + t % 2);
    const Mat a = rand_complex(d, r), b = rand_complex(d, r), c = rand_complex(d, r);
    const BlockEncoding ea = be_from_matrix(a, 2 * spec_norm(a));
    const BlockEncoding eb = be_product(be_from_matrix(b), be_from_unitary(haar_random_unitary(d, r)));
    const BlockEncoding ec = be_from_matrix(c);
    const Mat B = extract(eb);
    const std::vector<cd> x{cd(0.3, 0.1), -1.2, cd(0, 2)};
    e = std::max(e, (extract(be_product(ea, eb)) - a * B).cwiseAbs().maxCoeff());
    e = std::max(e, (extract(be_hadamard_product(ea, eb)) - a.cwiseProduct(B)).cwiseAbs().maxCoeff());
    e = std::max(e, (extract(be_linear_combination({ea, eb, ec}, x)) - (x[0] * a + x[1] * B + x[2] * c)).cwiseAbs().maxCoeff());
  }
  return verdict(lcu <= 1e-10 && e <= 1e-9, "LCU error " + fmt(lcu) + ", composition error " + fmt(e));
}

Check qsvt_pinv(const std::string&) {
  Rng r(5);
  const PolySpec p = PolySpec::monomial({0.0, 0.2, 0.0, -0.05});
  double eq = 0, ep = 0;
  for (int t = 0; t < 50; ++t) {
    const long long d = 4;
    const Mat a = rand_complex(d, r);
    const BlockEncoding be = be_from_matrix(a);
    // odd polynomial of singular values, written as a matrix polynomial
    const Mat An = block(be);
    const Mat want = 0.2 * An - 0.05 * An * An.adjoint() * An;
    eq = std::max(eq, (extract(qsvt_apply(be, p)) - want).cwiseAbs().maxCoeff());

    const Mat u = haar_random_unitary(d, r), v = haar_random_unitary(d, r);
    RVec s(d);
    for (long long i = 0; i < d; ++i) s(i) = r.uniform(0.25, 1.0);
    const Mat M = 2.0 * u * s.cast<cd>().asDiagonal() * v.adjoint();
    const BlockEncoding em = be_from_matrix(M, 2.0);
    const BlockEncoding pi = be_pseudo_inverse(em, 0.25, 1e-6);
    // full-rank instance: the range projector is the identity
    ep = std::max(ep, spec_norm(extract(pi) * (M / 2.0) - Mat::Identity(d, d)));
  }
  return verdict(eq <= 1e-9 && ep <= 1e-6, "QSVT error " + fmt(eq) + ", pseudo-inverse error " + fmt(ep));
}

Check poly_approximations(const std::string&) {
  bool ok = true;
  std::string detail;
  for (double eps : {1e-3, 1e-6, 1e-9}) {
    const PolySpec p = poly_approx_exp(eps, 1.0);
    const double err = grid_error(p, [](double x) { return std::exp(x); }, 1.0);
    const double cap = 4 * std::log(1 / eps) + 4;
    ok = ok && err <= eps && p.degree() <= cap;
    detail += "exp(" + fmt(eps) + ") deg " + std::to_string(p.degree()) + " err " + fmt(err) + "; ";
  }
  for (double eps : {1e-3, 1e-6})
    for (double k : {1.0, 2.0, 4.0}) {
      const PolySpec p = poly_approx_gelu(k, 1.0, eps);
      const double err = grid_error(p, [k](double x) { return gelu(k * x); }, 1.0);
      ok = ok && err <= eps;
      if (eps == 1e-6) detail += "gelu k=" + fmt(k) + " deg " + std::to_string(p.degree()) + " err " + fmt(err) + "; ";
    }
  return verdict(ok, detail);
}

// ---- kernels ----

Check kernel_identities(const std::string&) {
  Rng r(6);
  double e_rx = 0, e_basis = 0, e_amp = 0;
  for (int t = 0; t < 1000; ++t) {
    RVec x(1), y(1);
    x(0) = r.uniform(0, 2 * kPi);
    y(0) = r.uniform(0, 2 * kPi);
    const double want = std::pow(std::cos((x(0) - y(0)) / 2), 2);
    e_rx = std::max(e_rx, std::abs(quantum_kernel(FeatureMap::single_qubit_rx, x, y) - want));

    RVec b1(3), b2(3);
    for (int k = 0; k < 3; ++k) {
      b1(k) = double(r.below(2));
      b2(k) = t % 4 == 0 ? b1(k) : double(r.below(2));
    }
    e_basis = std::max(e_basis, std::abs(quantum_kernel(FeatureMap::basis, b1, b2) - (b1 == b2 ? 1.0 : 0.0)));

    RVec a1(4), a2(4);
    for (int k = 0; k < 4; ++k) {
      a1(k) = r.normal();
      a2(k) = r.normal();
    }
    const double ov = std::pow(a1.normalized().dot(a2.normalized()), 2);
    e_amp = std::max(e_amp, std::abs(quantum_kernel(FeatureMap::amplitude, a1, a2) - ov));
  }
  const bool ok = e_rx <= 1e-12 && e_basis <= 1e-12 && e_amp <= 1e-12;
  return verdict(ok, "RX " + fmt(e_rx) + ", basis " + fmt(e_basis) + ", amplitude " + fmt(e_amp));
}

Check c2qe_inner_products(const std::string&) {
  Rng r(7);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const long long d = t % 3 == 0 ? 3 : t % 3 == 1 ? 15 : 63;
    RVec a(d), b(d);
    for (long long k = 0; k < d; ++k) {
      a(k) = r.normal();
      b(k) = r.normal();
    }
    a /= a.lpNorm<1>();
    b /= b.lpNorm<1>();
    const int n = c2qe_qubits(d);
    const double lhs = double(1LL << n) * (c2qe_embed(a) * c2qe_embed(b)).trace().real() - 1;
    worst = std::max(worst, std::abs(lhs - a.dot(b)));
  }
  return verdict(worst <= 1e-10, "max error " + fmt(worst));
}

Check geometric_saturation(const std::string&) {
  Rng r(8);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const RMat A = rand_real(20, 20, r), B = rand_real(20, 20, r);
    const RMat KC = A * A.transpose() / 20 + 1e-3 * RMat::Identity(20, 20);
    const RMat KQ = B * B.transpose() / 20 + 1e-3 * RMat::Identity(20, 20);
    const AdversarialLabels adv = adversarial_dataset(KC, KQ);
    worst = std::max(worst, std::abs(adv.ratio - adv.g2) / adv.g2);
  }
  return verdict(worst <= 1e-6, "max relative gap " + fmt(worst));
}

Check risk_bounds(const std::string&) {
  Rng r(9);
  const int n = 20;
  double e = 0, train0 = 0;
  for (int t = 0; t < 20; ++t) {
    const RMat A = rand_real(n, n, r);
    const RMat K = A * A.transpose() / n + 0.5 * RMat::Identity(n, n);
    RVec y(n);
    for (int i = 0; i < n; ++i) y(i) = r.normal();
    train0 = std::max(train0, kernel_risk_bounds(K, y, 0.0, 0.05).train_bound);
    for (double lam : {0.0, 0.1, 1.0}) {
      const RiskBounds rb = kernel_risk_bounds(K, y, lam, 0.05);
      const RMat inv = (K + lam * RMat::Identity(n, n)).inverse();
      const double tr = std::sqrt(lam * lam * y.dot(inv * inv * y) / n);
      const double gq = y.dot(inv * K * inv * y) / n;
      e = std::max({e, std::abs(rb.train_bound - tr), std::abs(rb.gen_quadratic - gq)});
    }
  }
  return verdict(train0 == 0.0 && e <= 1e-10, "train bound at lambda 0: " + fmt(train0) + ", oracle gap " + fmt(e));
}

// ---- encodings / readout ----

Check tomography(const std::string&) {
  Rng r(10);
  double exact_worst = 0, shot_worst = 0;
  bool mono = true;
  for (int t = 0; t < 12; ++t) {
    const int n = 1 + t % 2;
    const DensityMatrix rho = t % 3 == 0 ? DensityMatrix::from_pure(random_state(n, r)) : random_density(n, r);
    const MeasurementData exact = simulate_tomography_data(rho, 0, r);
    const TomographyResult li = qst_linear_inversion(exact), ml = qst_mle(exact);
    exact_worst = std::max({exact_worst, trace_distance(li.rho_hat, rho.m), trace_distance(ml.rho_hat, rho.m)});
    for (size_t i = 1; i < ml.loglik.size(); ++i) mono = mono && ml.loglik[i] >= ml.loglik[i - 1] - 1e-12;
    const MeasurementData shots = simulate_tomography_data(rho, 100000, r);
    const TomographyResult ls = qst_linear_inversion(shots), ms = qst_mle(shots);
    shot_worst = std::max({shot_worst, trace_distance(ls.rho_hat, rho.m), trace_distance(ms.rho_hat, rho.m)});
    for (size_t i = 1; i < ms.loglik.size(); ++i) mono = mono && ms.loglik[i] >= ms.loglik[i - 1] - 1e-12;
  }
  const bool ok = exact_worst <= 1e-6 && shot_worst <= 0.05 && mono;
  return verdict(ok, "exact " + fmt(exact_worst) + ", 1e5 shots " + fmt(shot_worst) + ", monotone " + (mono ? "yes" : "no"));
}

// ---- learners ----

Check parameter_shift(const std::string&) {
  Rng r(11);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 4, L = 1 + t % 3;
    const ParamCircuit c = build_hec(n, L, t % 2 ? Entangler::CNOT : Entangler::CZ);
    RVec th(c.num_params);
    for (Eigen::Index i = 0; i < th.size(); ++i) th(i) = r.uniform(0, 2 * kPi);
    const StateVector in = random_state(n, r);
    const Mat o = random_hermitian(1LL << n, r);
    worst = std::max(worst, (parameter_shift_grad(c, th, in, o) - finite_difference_grad(c, th, in, o)).cwiseAbs().maxCoeff());
  }
  return verdict(worst <= 1e-6, "max gap " + fmt(worst));
}

Check barren_plateau(const std::string&) {
  const auto rows = bp_variance_experiment({2, 3, 4, 5, 6}, 10000, 12);
  bool ok = true;
  std::string detail;
  for (auto& b : rows) {
    const double ratio = b.var_grad / b.predicted_var;
    ok = ok && ratio >= 0.5 && ratio <= 2.0 && std::abs(b.mean_grad) <= 4 * b.mean_sem;
    detail += "N=" + std::to_string(b.n) + " ratio " + fmt(ratio) + "; ";
  }
  return verdict(ok, detail);
}

Check qnn_classifier(const std::string&) {
  const MarginData md = synth_margin_dataset(120, 4, 0.5, 100);
  const Dataset Xtr(md.X.begin(), md.X.begin() + 80), Xte(md.X.begin() + 80, md.X.end());
  const std::vector<int> ytr(md.y.begin(), md.y.begin() + 80), yte(md.y.begin() + 80, md.y.end());
  QnnConfig cfg;
  cfg.seed = 0;
  const QnnResult res = qnn_train_classifier(Xtr, ytr, Xte, yte, cfg);
  const double l0 = res.record.initial_loss, l1 = res.record.train_loss.back(), acc = res.record.test_acc.back();
  return verdict(l1 < l0 && acc >= 0.8,
                 "loss " + fmt(l0) + " -> " + fmt(l1) + ", test accuracy " + fmt(acc));
}

Check perceptron_bound(const std::string&) {
  bool ok = true;
  long long worst_slack = 1 << 30;
  for (int t = 0; t < 100; ++t) {
    const double g = t % 2 ? 0.4 : 0.2;
    const MarginData md = synth_margin_dataset(200, 5, g, 1000 + t);
    const PerceptronResult pr = perceptron_train(md.X, md.y);
    const long long bound = (long long)std::ceil(1 / (g * g));
    ok = ok && pr.converged && pr.mistakes <= bound;
    worst_slack = std::min(worst_slack, bound - pr.mistakes);
  }
  return verdict(ok, "min slack to the bound " + std::to_string(worst_slack));
}

// ---- Grover ----

Check grover(const std::string&) {
  double amp = 0, min_succ = 1;
  Rng r(15);
  for (int n = 2; n <= 12; ++n)
    for (long long M : {1LL, 3LL}) {
      const SearchProblem p(n, [M](long long x) { return x % 7 == 3 && x / 7 < M; });
      if (p.M == 0 || p.M == p.dim()) continue;
      for (auto& s : grover_amplitude_trace(p, grover_iterations(p.dim(), p.M) + 2))
        amp = std::max({amp, std::abs(s.alpha - s.alpha_closed), std::abs(s.beta - s.beta_closed)});
      if (M == 1 && n >= 4) min_succ = std::min(min_succ, grover_search(p, r).success_prob);
    }
  return verdict(amp <= 1e-9 && min_succ >= 0.8, "amplitude error " + fmt(amp) + ", min success " + fmt(min_succ));
}

Check perceptron_scaling(const std::string&) {
  const ScalingStudy st = perceptron_scaling_study({64, 128, 256, 512, 1024, 2048, 4096}, 20, 0.3, 0.1, 1.5, 8, 16);
  const bool ok = st.slope_quantum >= 0.35 && st.slope_quantum <= 0.65 && st.slope_classical >= 0.85 &&
                  st.slope_classical <= 1.15;
  return verdict(ok, "quantum slope " + fmt(st.slope_quantum) + ", classical slope " + fmt(st.slope_classical));
}

// ---- QGAN ----

Check qgan_smoke(const std::string& fixtures) {
  LabeledData ds = filter_label(load_csv_dataset(fixtures + "/optdigits_small.csv", CsvSchema::optdigits), 5);
  if (ds.X.size() < 50) return verdict(false, "fixture has fewer than 50 label-5 rows");
  ds.X.resize(50);
  QganConfig cfg;
  cfg.seed = 20;
  const QganResult res = qgan_patch_train(ds.X, cfg);
  bool finite = !res.steps.empty();
  for (auto& s : res.steps) finite = finite && std::isfinite(s.loss_d) && std::isfinite(s.loss_g);
  const bool valid = res.max_sum_error <= 1e-9 && res.min_entry >= -1e-12 && res.min_post > 0;
  return verdict(finite && valid && res.record.epochs.size() == 2,
                 std::to_string(res.steps.size()) + " steps, sum error " + fmt(res.max_sum_error) + ", min post " +
                     fmt(res.min_post));
}

// ---- Transformer ----

Check transformer_fixture(const std::string&) {
  const ToyInstance t = toy_cat_sleeps();
  RMat Pw(3, 3), Ow(3, 4);
  Pw << 0.324, 0.467, 0.209, 0.305, 0.515, 0.180, 0.346, 0.432, 0.222;
  Ow << 1.536, 1.519, 1.265, 1.157, 1.566, 1.536, 1.261, 1.137, 1.512, 1.507, 1.269, 1.174;
  const double ep = (attention_weights(t.S, t.w, 2.0, false) - Pw).cwiseAbs().maxCoeff();
  const double eo = (classical_attention(t.S, t.w, 2.0, false) - Ow).cwiseAbs().maxCoeff();
  return verdict(ep <= 5e-4 && eo <= 5e-4, "weights " + fmt(ep) + ", output " + fmt(eo));
}

Check quantum_transformer(const std::string&) {
  double exact = 1, poly = 1;
  for (int s = 0; s < 100; ++s) {
    Rng g = Rng(18).derive(std::uint64_t(s));
    TransformerWeights w;
    w.Wq = rand_real(4, 4, g);
    w.Wk = rand_real(4, 4, g);
    w.Wv = rand_real(4, 4, g);
    w.M1 = rand_real(8, 4, g);
    w.M2 = rand_real(4, 8, g);
    w.b1 = rand_real(8, 1, g);
    w.b2 = rand_real(4, 1, g);
    const RMat S = rand_real(4, 4, g);
    QTransformerConfig c;
    c.j = s % 4;
    c.masked = s % 2 == 1;
    exact = std::min(exact, q_transformer_row(S, w, c).cosine);
    c.mode = QMode::polynomial;
    c.eps = 1e-6;
    poly = std::min(poly, q_transformer_row(S, w, c).cosine);
  }
  return verdict(exact >= 1 - 1e-9 && poly >= 1 - 1e-4,
                 "1 - cos: exact " + fmt(1 - exact) + ", polynomial " + fmt(1 - poly));
}

Check norm_scaling(const std::string&) {
  const std::vector<long long> ells{32, 64, 128, 256, 512, 1024};
  const NormStudy unit = norm_scaling_study(RowSampler::unit, ells, 64, 3, 21);
  const NormStudy gauss = norm_scaling_study(RowSampler::gaussian, ells, 64, 3, 21);
  double dev = 0;
  for (auto& r : unit.rows) dev = std::max(dev, r.frobenius_dev);
  return verdict(dev <= 1e-9 && gauss.slope_spectral <= 0.6,
                 "unit-row Frobenius deviation " + fmt(dev) + ", gaussian spectral slope " + fmt(gauss.slope_spectral));
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "channel algebra", "core", 1, channel_algebra},
      {2, "dilation equivalence", "core", 10, dilation_equivalence},
      {3, "Haar moments", "core", 60, haar_moments},
      {4, "block-encoding demo", "blockenc", 30, blockenc_demo},
      {5, "QSVT and pseudo-inverse", "blockenc", 30, qsvt_pinv},
      {6, "kernel identities", "kernel", 10, kernel_identities},
      {7, "C2QE inner products", "kernel", 20, c2qe_inner_products},
      {8, "geometric-difference saturation", "kernel", 20, geometric_saturation},
      {9, "risk-bound formulas", "kernel", 5, risk_bounds},
      {10, "tomography", "encodings", 120, tomography},
      {11, "parameter shift", "learners", 60, parameter_shift},
      {12, "barren plateau", "learners", 900, barren_plateau},
      {13, "QNN classifier", "learners", 600, qnn_classifier},
      {14, "perceptron bound", "learners", 30, perceptron_bound},
      {15, "Grover", "grover", 60, grover},
      {16, "quantum perceptron scaling", "grover", 1200, perceptron_scaling},
      {17, "transformer fixture", "transformer", 1, transformer_fixture},
      {18, "quantum transformer end-to-end", "transformer", 300, quantum_transformer},
      {19, "polynomial approximations", "blockenc", 30, poly_approximations},
      {20, "QGAN smoke", "qgan", 600, qgan_smoke},
      {21, "norm-scaling study", "transformer", 60, norm_scaling},
  };
  return all;
}

std::vector<CriterionResult> run_acceptance(const std::string& suite, const std::vector<int>& only,
                                            const std::string& fixtures, std::ostream& log) {
  bool known = suite == "all";
  for (auto& c : criteria()) known = known || c.suite == suite;
  if (!known) throw ArgumentError("unknown suite '" + suite + "'");
  std::vector<CriterionResult> out;
  for (auto& c : criteria()) {
    if (suite != "all" && c.suite != suite) continue;
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.suite = c.suite;
    r.budget = c.budget;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Check k = c.run(fixtures);
      r.pass = k.pass;
      r.detail = k.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("threw: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.budget) {
      r.pass = false;
      r.detail += " (over the " + fmt(r.budget) + " s budget)";
    }
    log << (r.pass ? "PASS" : "FAIL") << " [" << std::setw(2) << r.id << "] " << r.name << ": " << r.detail << " ("
        << std::fixed << std::setprecision(2) << r.seconds << " s)" << std::defaultfloat << std::endl;
    out.push_back(r);
  }
  return out;
}

}  // namespace qmlbench::harness
