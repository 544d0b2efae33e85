#include <Eigen/SVD>

#include "doctest.h"
#include "qmlbench/blockenc.hpp"
#include "qmlbench/readout.hpp"

using namespace qmlbench;

namespace {
Mat rnd(long long d, Rng& r) {
  Mat m(d, d);
  for (long long i = 0; i < d; ++i)
    for (long long j = 0; j < d; ++j) m(i, j) = cd(r.normal(), r.normal());
  return m;
}
}  // namespace

TEST_CASE("encoding a matrix and reading it back") {
  Rng r(1);
  const Mat a = rnd(4, r);
  const BlockEncoding be = be_from_matrix(a);
  check_block_encoding(be);
  CHECK((extract(be) - a).norm() < 1e-10);
}

TEST_CASE("alpha below the spectral norm is rejected") {
  Rng r(2);
  const Mat a = rnd(2, r);
  CHECK_THROWS_AS(be_from_matrix(a, 0.1 * a.norm()), ValidationError);
}

TEST_CASE("product and linear combination") {
  Rng r(3);
  const Mat a = rnd(2, r), b = rnd(2, r);
  const BlockEncoding ea = be_from_matrix(a), eb = be_from_matrix(b);
  CHECK((extract(be_product(ea, eb)) - a * b).norm() < 1e-9);
  CHECK((extract(be_linear_combination({ea, eb}, {cd(1), cd(-2)})) - (a - 2.0 * b)).norm() < 1e-9);
  CHECK((extract(be_hadamard_product(ea, eb)) - a.cwiseProduct(b)).norm() < 1e-9);
}

TEST_CASE("transpose of a real block") {
  Rng r(6);
  const Mat a = rnd(2, r).real().cast<cd>();
  CHECK((extract(be_transpose(be_from_matrix(a))) - a.transpose()).norm() < 1e-9);
}

TEST_CASE("LCU demo matrix") {
  Mat A(4, 4);
  A << .36, 0, 0, .64, 0, -.36, .64, 0, 0, .64, .36, 0, .64, 0, 0, -.36;
  std::vector<double> c;
  std::vector<Mat> u;
  for (auto& t : pauli_decompose(A)) {
    c.push_back(t.coeff);
    u.push_back(pauli_string(t.pauli));
  }
  CHECK((extract(be_lcu(c, u)) - A).norm() < 1e-10);
}

TEST_CASE("state encoding and diagonal") {
  RVec x(4);
  x << 1, -2, 0.5, 3;
  const StateEncoding se = state_encode(x);
  const Mat d = extract(be_diag_from_state(se));
  // the diagonal carries the normalised amplitudes
  for (int i = 0; i < 4; ++i) CHECK(d(i, i).real() == doctest::Approx(x(i) / x.norm()));
}

TEST_CASE("projector mask") {
  const Mat p = extract(be_diag_projector({1, 0, 1, 1}));
  CHECK(p(1, 1).real() == doctest::Approx(0.0));
  CHECK(p(2, 2).real() == doctest::Approx(1.0));
}

TEST_CASE("qsvt with an odd polynomial") {
  Rng r(4);
  const BlockEncoding be = be_from_matrix(rnd(4, r));
  const Mat An = block(be);
  const PolySpec p = PolySpec::monomial({0.0, 0.2, 0.0, -0.05});
  CHECK((extract(qsvt_apply(be, p)) - (0.2 * An - 0.05 * An * An.adjoint() * An)).norm() < 1e-9);
}

TEST_CASE("pseudo-inverse of a well conditioned matrix") {
  Mat m(2, 2);
  m << 0.9, 0.1, -0.2, 0.6;
  const BlockEncoding pi = be_pseudo_inverse(be_from_matrix(m, 1.0), 0.25, 1e-6);
  CHECK((extract(pi) * m - Mat::Identity(2, 2)).norm() < 1e-6);
}

TEST_CASE("exp and GELU approximations") {
  const PolySpec e = poly_approx_exp(1e-6, 1.0);
  CHECK(grid_error(e, [](double x) { return std::exp(x); }, 1.0) <= 1e-6);
  CHECK(e.degree() <= 4 * std::log(1e6) + 4);
  const PolySpec g = poly_approx_gelu(2.0, 1.0, 1e-6);
  CHECK(grid_error(g, [](double x) { return gelu(2 * x); }, 1.0) <= 1e-6);
}

TEST_CASE("apply and post-select equals block times vector") {
  Rng r(5);
  const Mat a = rnd(4, r);
  const BlockEncoding be = be_from_matrix(a, 2 * a.norm());
  Vec x = Vec::Random(4);
  CHECK((apply_and_postselect(be, x) - block(be) * x).norm() < 1e-10);
}
