#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "qmlbench/kernel.hpp"

using namespace qmlbench;

TEST_CASE("single qubit RX kernel is cos^2 of the half difference") {
  RVec x(1), y(1);
  x << 0.3;
  y << 1.9;
  CHECK(quantum_kernel(FeatureMap::single_qubit_rx, x, y) == doctest::Approx(std::pow(std::cos(0.8), 2)));
}

TEST_CASE("angle kernel matches the explicit feature state") {
  RVec x(3), y(3);
  x << 0.1, 0.5, 2.0;
  y << 1.0, -0.4, 0.3;
  const double direct = std::norm(feature_state(FeatureMap::angleX, x).amps.dot(feature_state(FeatureMap::angleX, y).amps));
  CHECK(quantum_kernel(FeatureMap::angleX, x, y) == doctest::Approx(direct));
}

TEST_CASE("kernel matrix is symmetric PSD with unit diagonal") {
  Rng rng(1);
  Dataset X;
  for (int i = 0; i < 10; ++i) {
    RVec x(3);
    for (int k = 0; k < 3; ++k) x(k) = rng.uniform(0, 3);
    X.push_back(x);
  }
  const RMat K = kernel_matrix(X, FeatureMap::angleY);
  CHECK((K - K.transpose()).norm() < 1e-14);
  CHECK(K.diagonal().minCoeff() == doctest::Approx(1.0));
  Eigen::SelfAdjointEigenSolver<RMat> es(K);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("swap test estimate is close to exact") {
  Rng rng(2);
  RVec x(2), y(2);
  x << 0.2, 0.7;
  y << 1.1, 0.1;
  const double exact = quantum_kernel(FeatureMap::angleX, x, y);
  CHECK(std::abs(quantum_kernel_swap_test(FeatureMap::angleX, x, y, 20000, rng) - exact) < 0.05);
}

TEST_CASE("C2QE inner product identity") {
  RVec a(3), b(3);
  a << 0.5, -0.25, 0.25;
  b << -0.2, 0.3, 0.5;
  const double lhs = double(1 << c2qe_qubits(3)) * (c2qe_embed(a) * c2qe_embed(b)).trace().real() - 1;
  CHECK(lhs == doctest::Approx(a.dot(b)));
}

TEST_CASE("ridge at lambda zero interpolates") {
  RMat K(2, 2);
  K << 1, 0.5, 0.5, 1;
  RVec y(2);
  y << 1, -1;
  const RidgeModel m = ridge_fit(K, y, 0.0);
  CHECK(ridge_predict(m, K.row(0).transpose()) == doctest::Approx(1.0));
  CHECK(kernel_risk_bounds(K, y, 0.0, 0.05).train_bound == 0.0);
}

TEST_CASE("geometric difference of a kernel with itself") {
  RMat K(2, 2);
  K << 1, 0.3, 0.3, 1;
  CHECK(geometric_difference(K, K).g == doctest::Approx(1.0));
}

TEST_CASE("unknown feature map name") { CHECK_THROWS_AS(parse_feature_map("nope"), ValidationError); }
