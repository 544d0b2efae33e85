#include "doctest.h"
#include "qmlbench/learners.hpp"

using namespace qmlbench;

TEST_CASE("parameter shift agrees with finite differences") {
  Rng rng(1);
  const ParamCircuit c = build_hec(3, 2);
  RVec th(c.num_params);
  for (Eigen::Index i = 0; i < th.size(); ++i) th(i) = rng.uniform(0, 6.28);
  const StateVector in = random_state(3, rng);
  const Mat o = pauli_string("ZIZ");
  CHECK((parameter_shift_grad(c, th, in, o) - finite_difference_grad(c, th, in, o)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("hardware-efficient circuit parameter count") {
  const ParamCircuit c = build_hec(4, 3);
  CHECK(c.n == 4);
  CHECK(c.num_params > 0);
  CHECK(c.num_params % 4 == 0);
}

TEST_CASE("margin dataset realises its margin") {
  const MarginData md = synth_margin_dataset(50, 4, 0.3, 7);
  CHECK(md.X.size() == 50);
  CHECK(md.margin >= 0.3 - 1e-12);
  for (size_t i = 0; i < md.X.size(); ++i) CHECK(md.X[i].norm() <= 1 + 1e-12);
}

TEST_CASE("perceptron respects the mistake bound") {
  const MarginData md = synth_margin_dataset(100, 5, 0.25, 3);
  const PerceptronResult r = perceptron_train(md.X, md.y);
  CHECK(r.converged);
  CHECK(r.mistakes <= 16);
}

TEST_CASE("MLP backprop matches finite differences") {
  Rng rng(2);
  const MLP net = MLP::init({3, 4, 2}, Activation::tanh, OutputKind::softmax, rng);
  RVec x(3), t(2);
  x << 0.2, -0.4, 0.9;
  t << 1, 0;
  const MLPGrad g = mlp_backprop(net, x, t, LossKind::cross_entropy);
  MLP p = net;
  const double h = 1e-6;
  p.W[0](1, 2) += h;
  const double up = mlp_loss(p, x, t, LossKind::cross_entropy);
  p.W[0](1, 2) -= 2 * h;
  const double dn = mlp_loss(p, x, t, LossKind::cross_entropy);
  CHECK(g.dW[0](1, 2) == doctest::Approx((up - dn) / (2 * h)).epsilon(1e-5));
}

TEST_CASE("training is deterministic for a fixed seed") {
  const MarginData md = synth_margin_dataset(24, 2, 0.4, 5);
  const Dataset tr(md.X.begin(), md.X.begin() + 16), te(md.X.begin() + 16, md.X.end());
  const std::vector<int> ytr(md.y.begin(), md.y.begin() + 16), yte(md.y.begin() + 16, md.y.end());
  QnnConfig cfg;
  cfg.n = 2;
  cfg.epochs = 3;
  cfg.seed = 11;
  const QnnResult a = qnn_train_classifier(tr, ytr, te, yte, cfg);
  const QnnResult b = qnn_train_classifier(tr, ytr, te, yte, cfg);
  CHECK(a.record.train_loss == b.record.train_loss);
  CHECK(a.record.param_hash == b.record.param_hash);
}

TEST_CASE("gradient variance shrinks with qubit count") {
  const auto rows = bp_variance_experiment({2, 4}, 400, 5);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].var_grad < rows[0].var_grad);
}
