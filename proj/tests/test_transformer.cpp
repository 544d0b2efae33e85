#include "doctest.h"
#include "qmlbench/qtransformer.hpp"

using namespace qmlbench;

namespace {
RMat rnd(long long r, long long c, Rng& g) {
  RMat m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g.normal();
  return m;
}

TransformerWeights random_weights(int d, int dff, Rng& g) {
  TransformerWeights w;
  w.Wq = rnd(d, d, g);
  w.Wk = rnd(d, d, g);
  w.Wv = rnd(d, d, g);
  w.M1 = rnd(dff, d, g);
  w.M2 = rnd(d, dff, g);
  w.b1 = rnd(dff, 1, g);
  w.b2 = rnd(d, 1, g);
  return w;
}
}  // namespace

TEST_CASE("cat sleeps attention weights") {
  const ToyInstance t = toy_cat_sleeps();
  const RMat P = attention_weights(t.S, t.w, 2.0, false);
  CHECK(P(0, 0) == doctest::Approx(0.3242).epsilon(1e-3));
  CHECK(P(1, 1) == doctest::Approx(0.5151).epsilon(1e-3));
  for (int i = 0; i < 3; ++i) CHECK(P.row(i).sum() == doctest::Approx(1.0));
}

TEST_CASE("causal mask zeroes future positions") {
  const ToyInstance t = toy_cat_sleeps();
  const RMat P = attention_weights(t.S, t.w, 2.0, true);
  CHECK(P(0, 1) == 0.0);
  CHECK(P(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("layer norm centres and scales") {
  RVec x(4);
  x << 1, 2, 3, 4;
  const RVec y = layer_norm(x, 1.0, 0.0);
  CHECK(y.mean() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(y.squaredNorm() / 4 == doctest::Approx(1.0));
  CHECK_THROWS_AS(layer_norm(RVec(RVec::Ones(4)), 1.0, 0.0), DegenerateError);
}

TEST_CASE("quantum row matches classical in exact mode") {
  Rng g(1);
  const TransformerWeights w = random_weights(4, 8, g);
  const RMat S = rnd(4, 4, g);
  QTransformerConfig cfg;
  cfg.j = 2;
  const QTransformerResult r = q_transformer_row(S, w, cfg);
  CHECK(r.cosine >= 1 - 1e-9);
  CHECK(r.output.amps.norm() == doctest::Approx(1.0));
  CHECK(r.construction_count > 0);
}

TEST_CASE("polynomial mode stays close") {
  Rng g(2);
  const TransformerWeights w = random_weights(4, 8, g);
  const RMat S = rnd(4, 4, g);
  QTransformerConfig cfg;
  cfg.j = 1;
  cfg.masked = true;
  cfg.mode = QMode::polynomial;
  const QTransformerResult r = q_transformer_row(S, w, cfg);
  CHECK(r.cosine >= 1 - 1e-4);
  CHECK(r.degree_exp > 0);
  CHECK(r.degree_gelu > 0);
}

TEST_CASE("row scale factors multiply out") {
  const ToyInstance t = toy_cat_sleeps();
  const QTransformerResult r = q_transformer_row(t.S, t.w, QTransformerConfig{});
  double prod = 1;
  for (auto& f : r.attention.factors) prod *= f.second;
  CHECK(prod == doctest::Approx(r.attention.scale));
}

TEST_CASE("row index out of range") {
  const ToyInstance t = toy_cat_sleeps();
  QTransformerConfig cfg;
  cfg.j = 7;
  CHECK_THROWS_AS(q_transformer_row(t.S, t.w, cfg), ValidationError);
}

TEST_CASE("unit rows give Frobenius norm sqrt(l)") {
  const NormStudy st = norm_scaling_study(RowSampler::unit, {16, 64}, 8, 2, 3);
  for (auto& r : st.rows) CHECK(r.frobenius == doctest::Approx(std::sqrt(double(r.ell))));
  CHECK(st.slope_frobenius == doctest::Approx(0.5));
}
