#include "doctest.h"
#include "qmlbench/qgan.hpp"

using namespace qmlbench;

TEST_CASE("patch probabilities are a distribution") {
  QganConfig cfg;
  Rng rng(1);
  const QganGenerator g = qgan_generator_init(cfg, rng);
  RVec z(cfg.n);
  for (int k = 0; k < cfg.n; ++k) z(k) = rng.uniform(0, kPi / 2);
  const PatchProbs pp = qgan_patch_probs(g, 0, z);
  CHECK(pp.p.sum() == doctest::Approx(1.0));
  CHECK(pp.p.minCoeff() >= 0.0);
  CHECK(pp.post > 0.0);
}

TEST_CASE("generated image has one value per pixel in [0,1]") {
  QganConfig cfg;
  Rng rng(2);
  const QganGenerator g = qgan_generator_init(cfg, rng);
  RVec z(cfg.n);
  z.setConstant(0.3);
  const RVec img = qgan_generate(g, z);
  CHECK(img.size() == 64);
  CHECK(img.minCoeff() >= -1e-12);
  CHECK(img.maxCoeff() <= 1 + 1e-12);
}

TEST_CASE("patch jacobian matches finite differences") {
  QganConfig cfg;
  cfg.n = 3;
  cfg.layers = 2;
  Rng rng(3);
  QganGenerator g = qgan_generator_init(cfg, rng);
  RVec z(cfg.n);
  z << 0.2, 0.9, 0.4;
  const RMat J = qgan_patch_jacobian(g, 1, z);
  const double h = 1e-6;
  g.params[1](0) += h;
  const RVec up = qgan_patch_probs(g, 1, z).p;
  g.params[1](0) -= 2 * h;
  const RVec dn = qgan_patch_probs(g, 1, z).p;
  CHECK((J.col(0) - (up - dn) / (2 * h)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("min-max rescale") {
  RVec p(3);
  p << 0.2, 0.5, 0.3;
  const RVec r = minmax_rescale(p);
  CHECK(r.minCoeff() == 0.0);
  CHECK(r.maxCoeff() == doctest::Approx(1.0));
}
