#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numeric>

#include "qmlbench/learners.hpp"

namespace qmlbench {

std::string hash_params(const RVec& theta) {
  // FNV-1a over the raw doubles; enough to tell two snapshots apart
  std::uint64_t h = 1469598103934665603ULL;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    unsigned char b[sizeof(double)];
    double v = theta(i);
    std::memcpy(b, &v, sizeof v);
    for (unsigned char c : b) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

// ---- QNN classifier ----

StateVector qnn_encode(const RVec& x, int n, char axis) {
  if (x.size() != n) throw ArgumentError("feature count must equal the qubit count");
  if (axis != 'X' && axis != 'Y') throw ArgumentError("encoding axis must be X or Y");
  Vec amps = Vec::Ones(1);
  for (int q = 0; q < n; ++q) {
    const double a = kPi * (x(q) + 1.0) / 2.0;
    Vec s(2);
    if (axis == 'Y')
      s << std::cos(a / 2), std::sin(a / 2);
    else
      s << std::cos(a / 2), cd(0, -std::sin(a / 2));
    Vec next(amps.size() * 2);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      next(2 * i) = amps(i) * s(0);
      next(2 * i + 1) = amps(i) * s(1);
    }
    amps.swap(next);
  }
  StateVector sv;
  sv.amps = std::move(amps);
  sv.n = n;
  return sv;
}

namespace {
Mat z0_observable(int n) {
  const long long d = 1LL << n;
  Mat o = Mat::Zero(d, d);
  for (long long i = 0; i < d; ++i) o(i, i) = (i >> (n - 1)) & 1 ? -1.0 : 1.0;
  return o;
}

double z0_expect(const Vec& v, int n) {
  double s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += ((i >> (n - 1)) & 1 ? -1.0 : 1.0) * std::norm(v(i));
  return s;
}
}  // namespace

double qnn_output(const QnnModel& m, const RVec& x) {
  const StateVector in = qnn_encode(x, m.circuit.n, m.axis);
  return z0_expect(m.circuit.apply(m.theta, in.amps), m.circuit.n);
}

int qnn_predict(const QnnModel& m, const RVec& x) { return qnn_output(m, x) >= 0 ? 1 : -1; }

double qnn_loss(const QnnModel& m, const Dataset& X, const std::vector<int>& y) {
  if (X.empty()) return 0.0;
  double s = 0;
  for (size_t i = 0; i < X.size(); ++i) {
    const double r = qnn_output(m, X[i]) - y[i];
    s += 0.5 * r * r;
  }
  return s / X.size();
}

double qnn_accuracy(const QnnModel& m, const Dataset& X, const std::vector<int>& y) {
  if (X.empty()) return 0.0;
  int ok = 0;
  for (size_t i = 0; i < X.size(); ++i) ok += qnn_predict(m, X[i]) == y[i];
  return double(ok) / X.size();
}

QnnResult qnn_train_classifier(const Dataset& Xtr, const std::vector<int>& ytr, const Dataset& Xte,
                               const std::vector<int>& yte, const QnnConfig& cfg) {
  if (Xtr.size() != ytr.size() || Xte.size() != yte.size()) throw ArgumentError("features and labels differ in count");
  for (int v : ytr)
    if (v != 1 && v != -1) throw ValidationError("labels must be -1 or +1");
  for (int v : yte)
    if (v != 1 && v != -1) throw ValidationError("labels must be -1 or +1");
  if (cfg.batch < 1 || cfg.epochs < 0) throw ArgumentError("batch must be positive and epochs non-negative");
  if (cfg.optimizer != "adam" && cfg.optimizer != "sgd") throw ArgumentError("optimizer must be adam or sgd");

  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(cfg.seed);
  Rng init = rng.derive("init"), order = rng.derive("shuffle");

  QnnResult res;
  res.model.circuit = build_hec(cfg.n, cfg.layers, cfg.entangler);
  res.model.axis = cfg.axis;
  res.model.theta = RVec(res.model.circuit.num_params);
  for (Eigen::Index i = 0; i < res.model.theta.size(); ++i) res.model.theta(i) = init.uniform(0, 2 * kPi);

  auto& rec = res.record;
  rec.seed = cfg.seed;
  rec.initial_loss = qnn_loss(res.model, Xtr, ytr);

  Adam adam;
  adam.lr = cfg.lr;
  Sgd sgd;
  sgd.lr = cfg.lr;
  const Mat obs = z0_observable(cfg.n);
  std::vector<size_t> idx(Xtr.size());
  std::iota(idx.begin(), idx.end(), 0);

  for (int ep = 1; ep <= cfg.epochs; ++ep) {
    std::shuffle(idx.begin(), idx.end(), order.engine());
    for (size_t s = 0; s < idx.size(); s += cfg.batch) {
      const size_t e = std::min(idx.size(), s + cfg.batch);
      RVec g = RVec::Zero(res.model.theta.size());
      for (size_t k = s; k < e; ++k) {
        const StateVector in = qnn_encode(Xtr[idx[k]], cfg.n, cfg.axis);
        const double yhat = z0_expect(res.model.circuit.apply(res.model.theta, in.amps), cfg.n);
        g += (yhat - ytr[idx[k]]) * parameter_shift_grad(res.model.circuit, res.model.theta, in, obs);
      }
      g /= double(e - s);
      if (cfg.optimizer == "adam")
        adam.step(res.model.theta, g);
      else
        sgd.step(res.model.theta, g);
    }
    rec.epochs.push_back(ep);
    rec.train_loss.push_back(qnn_loss(res.model, Xtr, ytr));
    rec.test_loss.push_back(qnn_loss(res.model, Xte, yte));
    rec.train_acc.push_back(qnn_accuracy(res.model, Xtr, ytr));
    rec.test_acc.push_back(qnn_accuracy(res.model, Xte, yte));
  }
  rec.param_hash = hash_params(res.model.theta);
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

// ---- barren plateau ----

std::vector<BpRow> bp_variance_experiment(const std::vector<int>& ns, long long samples, std::uint64_t seed,
                                          int depth_factor, Entangler ent) {
  if (samples < 2) throw ArgumentError("need at least two samples");
  if (depth_factor < 1) throw ArgumentError("depth factor must be positive");
  std::vector<BpRow> rows;
  Rng master(seed);
  for (int n : ns) {
    if (n < 1) throw ArgumentError("qubit counts must be positive");
    const int depth = depth_factor * n;
    const ParamCircuit c = build_hec(n, depth, ent);
    // RY of qubit 0 in the middle layer
    const int slot = (depth / 2) * n * 3 + 1;
    const long long d = 1LL << n;
    Mat obs = Mat::Zero(d, d);
    for (long long i = 0; i < d; ++i) obs(i, i) = std::popcount((unsigned long long)i) % 2 ? -1.0 : 1.0;
    const StateVector in = StateVector::zero(n);

    Rng rng = master.derive(std::uint64_t(n));
    RVec theta(c.num_params);
    double sum = 0, sum2 = 0;
    for (long long s = 0; s < samples; ++s) {
      for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = rng.uniform(0, 2 * kPi);
      const double g = parameter_shift_component(c, theta, in, obs, slot);
      sum += g;
      sum2 += g * g;
    }
    BpRow r;
    r.n = n;
    r.depth = depth;
    r.samples = samples;
    r.mean_grad = sum / samples;
    r.var_grad = (sum2 - samples * r.mean_grad * r.mean_grad) / (samples - 1);
    r.predicted_var = std::pow(2.0, -(n + 1));
    r.mean_sem = std::sqrt(r.var_grad / samples);
    rows.push_back(r);
  }
  return rows;
}

// ---- perceptron ----

MarginData synth_margin_dataset(int n, int d, double gamma, std::uint64_t seed) {
  if (!(gamma > 0 && gamma < 1)) throw ArgumentError("margin must lie in (0,1)");
  if (n < 1 || d < 2) throw ArgumentError("need n >= 1 points in d >= 2 dimensions");
  Rng rng(seed);
  MarginData out;
  out.w_star = RVec(d);
  for (int i = 0; i < d; ++i) out.w_star(i) = rng.normal();
  out.w_star.normalize();
  out.margin = 1.0;
  for (int i = 0; i < n; ++i) {
    const int label = i % 2 == 0 ? 1 : -1;
    // random direction projected orthogonal to w*
    RVec u(d);
    double nu = 0;
    do {
      for (int k = 0; k < d; ++k) u(k) = rng.normal();
      u -= u.dot(out.w_star) * out.w_star;
      nu = u.norm();
    } while (nu < 1e-8);
    u /= nu;
    const double s = rng.uniform(gamma, 1.0);
    RVec x = label * s * out.w_star + std::sqrt(std::max(0.0, 1 - s * s)) * u;
    x.normalize();
    out.margin = std::min(out.margin, label * out.w_star.dot(x));
    out.X.push_back(std::move(x));
    out.y.push_back(label);
  }
  return out;
}

PerceptronResult perceptron_train(const Dataset& X, const std::vector<int>& y, long long max_passes) {
  if (X.empty() || X.size() != y.size()) throw ArgumentError("features and labels differ in count");
  const Eigen::Index d = X[0].size();
  for (auto& x : X) {
    if (x.size() != d) throw ArgumentError("ragged feature vectors");
    if (std::abs(x.norm() - 1.0) > 1e-9) throw ValidationError("perceptron inputs must have unit norm");
  }
  PerceptronResult r;
  r.w = RVec::Zero(d);
  while (r.passes < max_passes) {
    ++r.passes;
    long long errs = 0;
    for (size_t i = 0; i < X.size(); ++i) {
      if (y[i] * r.w.dot(X[i]) <= 0) {
        r.w += y[i] * X[i];
        ++errs;
      }
    }
    r.mistakes += errs;
    if (errs == 0) {
      r.converged = true;
      break;
    }
  }
  return r;
}

// ---- MLP ----

namespace {
double act(Activation a, double z) {
  switch (a) {
    case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Activation::relu: return z > 0 ? z : 0.0;
    case Activation::tanh: return std::tanh(z);
    case Activation::linear: return z;
  }
  return z;
}

double act_deriv(Activation a, double z) {
  switch (a) {
    case Activation::sigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      return s * (1 - s);
    }
    case Activation::relu: return z > 0 ? 1.0 : 0.0;
    case Activation::tanh: {
      const double t = std::tanh(z);
      return 1 - t * t;
    }
    case Activation::linear: return 1.0;
  }
  return 1.0;
}

RVec output_map(OutputKind k, const RVec& z) {
  if (k == OutputKind::linear) return z;
  if (k == OutputKind::sigmoid) return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
  const double mx = z.maxCoeff();
  RVec e = (z.array() - mx).exp();
  return e / e.sum();
}

void check_net(const MLP& net, const RVec& x) {
  if (net.W.empty() || net.W.size() != net.b.size()) throw ArgumentError("malformed MLP");
  if (net.W[0].cols() != x.size()) throw ArgumentError("input dimension does not match the first layer");
  for (size_t l = 0; l < net.W.size(); ++l) {
    if (net.b[l].size() != net.W[l].rows()) throw ArgumentError("bias size does not match layer");
    if (l > 0 && net.W[l].cols() != net.W[l - 1].rows()) throw ArgumentError("layer dimension chain broken");
  }
}

double loss_value(LossKind loss, const RVec& yhat, const RVec& t) {
  double s = 0;
  switch (loss) {
    case LossKind::mse: return 0.5 * (yhat - t).squaredNorm();
    case LossKind::bce:
      for (Eigen::Index i = 0; i < t.size(); ++i) s += bce(yhat(i), t(i));
      return s;
    case LossKind::cross_entropy:
      for (Eigen::Index i = 0; i < t.size(); ++i)
        if (t(i) != 0) s -= t(i) * std::log(yhat(i));
      return s;
  }
  return s;
}
}  // namespace

double bce(double p, double y) {
  double s = 0;
  if (y != 0) s -= y * std::log(p);
  if (y != 1) s -= (1 - y) * std::log(1 - p);
  return s;
}

MLP MLP::init(const std::vector<int>& dims, Activation hidden, OutputKind out, Rng& rng) {
  if (dims.size() < 2) throw ArgumentError("MLP needs at least input and output widths");
  MLP net;
  net.hidden = hidden;
  net.out = out;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    if (dims[l] < 1 || dims[l + 1] < 1) throw ArgumentError("layer widths must be positive");
    const double sc = 1.0 / std::sqrt(double(dims[l]));
    RMat w(dims[l + 1], dims[l]);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = sc * rng.normal();
    net.W.push_back(std::move(w));
    net.b.push_back(RVec::Zero(dims[l + 1]));
  }
  return net;
}

RVec mlp_forward(const MLP& net, const RVec& x) {
  check_net(net, x);
  RVec a = x;
  for (int l = 0; l < net.num_layers(); ++l) {
    RVec z = net.W[l] * a + net.b[l];
    if (l + 1 == net.num_layers()) return output_map(net.out, z);
    a = z.unaryExpr([&](double v) { return act(net.hidden, v); });
  }
  return a;
}

double mlp_loss(const MLP& net, const RVec& x, const RVec& target, LossKind loss) {
  return loss_value(loss, mlp_forward(net, x), target);
}

MLPGrad mlp_backprop(const MLP& net, const RVec& x, const RVec& target, LossKind loss) {
  check_net(net, x);
  const int L = net.num_layers();
  if (target.size() != net.W.back().rows()) throw ArgumentError("target dimension does not match output");
  std::vector<RVec> acts{x}, pre;
  for (int l = 0; l < L; ++l) {
    pre.push_back(net.W[l] * acts.back() + net.b[l]);
    if (l + 1 < L) acts.push_back(pre.back().unaryExpr([&](double v) { return act(net.hidden, v); }));
  }
  const RVec yhat = output_map(net.out, pre.back());

  RVec dy(yhat.size());
  switch (loss) {
    case LossKind::mse: dy = yhat - target; break;
    case LossKind::bce:
      for (Eigen::Index i = 0; i < dy.size(); ++i) dy(i) = -target(i) / yhat(i) + (1 - target(i)) / (1 - yhat(i));
      break;
    case LossKind::cross_entropy:
      for (Eigen::Index i = 0; i < dy.size(); ++i) dy(i) = target(i) == 0 ? 0.0 : -target(i) / yhat(i);
      break;
  }
  RVec dz;
  switch (net.out) {
    case OutputKind::linear: dz = dy; break;
    case OutputKind::sigmoid: dz = dy.cwiseProduct(yhat.cwiseProduct((1 - yhat.array()).matrix())); break;
    case OutputKind::softmax: {
      // [diag(y) - y y^T] dL/dy
      RMat J = RMat(yhat.asDiagonal()) - yhat * yhat.transpose();
      dz = J * dy;
      break;
    }
  }

  MLPGrad g;
  g.loss = loss_value(loss, yhat, target);
  g.dW.resize(L);
  g.db.resize(L);
  for (int l = L - 1; l >= 0; --l) {
    g.dW[l] = dz * acts[l].transpose();
    g.db[l] = dz;
    RVec da = net.W[l].transpose() * dz;
    if (l == 0) {
      g.dinput = da;
      break;
    }
    dz = da.cwiseProduct(pre[l - 1].unaryExpr([&](double v) { return act_deriv(net.hidden, v); }));
  }
  return g;
}

// ---- capacity diagnostics ----

CapacityBounds capacity_bound_diagnostics(int n_gt, int k, double norm_o, long long n, double delta, double lipschitz,
                                          double c_bound) {
  if (n_gt < 1 || k < 0 || norm_o <= 0 || n < 1 || lipschitz < 0 || c_bound < 0)
    throw ArgumentError("capacity diagnostics need positive inputs");
  if (!(delta > 0 && delta < 1)) throw ArgumentError("delta must lie in (0,1)");
  CapacityBounds b;
  const double eps = 0.05;
  const double p2k = std::pow(2.0, k);
  b.covering_log_bound = p2k * p2k * n_gt * std::log(7.0 * n_gt * norm_o / eps);
  b.gen_bound = (8 * lipschitz + c_bound + 24 * lipschitz * std::sqrt(double(n_gt)) * p2k) / std::sqrt(double(n));
  b.confidence_term = 3 * c_bound * std::sqrt(std::log(2 / delta) / (2.0 * n));
  return b;
}

}  // namespace qmlbench
