#include "doctest.h"
#include "qmlbench/readout.hpp"

using namespace qmlbench;

TEST_CASE("basis encoding picks the matching index") {
  const EncodedInput e = encode_basis({1, 0, 1});
  CHECK(std::abs(e.state.amps(5)) == doctest::Approx(1.0));
}

TEST_CASE("amplitude encoding normalises and pads") {
  RVec x(3);
  x << 3, 0, 4;
  const EncodedInput e = encode_amplitude(x);
  CHECK(e.state.n == 2);
  CHECK(e.state.amps(0).real() == doctest::Approx(0.6));
  CHECK(e.state.amps(2).real() == doctest::Approx(0.8));
  CHECK(std::abs(e.state.amps(3)) == 0.0);
}

TEST_CASE("amplitude encoding rejects the zero vector") {
  CHECK_THROWS_AS(encode_amplitude(RVec(RVec::Zero(4))), ValidationError);
}

TEST_CASE("angle encoding flags out-of-range inputs") {
  RVec x(2);
  x << 0.5, 7.0;
  CHECK(encode_angle(x).out_of_range);
}

TEST_CASE("pauli decomposition reconstructs the matrix") {
  Rng rng(1);
  const Mat h = random_hermitian(4, rng);
  Mat back = Mat::Zero(4, 4);
  for (auto& t : pauli_decompose(h)) back += t.coeff * pauli_string(t.pauli);
  CHECK((back - h).norm() < 1e-12);
}

TEST_CASE("Z expectation with exact shots limit") {
  Rng rng(2);
  const DensityMatrix rho = DensityMatrix::from_pure(StateVector::zero(1));
  CHECK(estimate_pauli_expectation(rho, "Z", 100, rng) == doctest::Approx(1.0));
}

TEST_CASE("linear inversion and MLE from exact data") {
  Rng rng(3);
  const DensityMatrix rho = random_density(2, rng);
  const MeasurementData d = simulate_tomography_data(rho, 0, rng);
  CHECK(d.records.size() == tomography_settings(2).size());
  CHECK(trace_distance(qst_linear_inversion(d).rho_hat, rho.m) < 1e-10);
  const TomographyResult ml = qst_mle(d);
  CHECK(trace_distance(ml.rho_hat, rho.m) < 1e-6);
  for (size_t i = 1; i < ml.loglik.size(); ++i) CHECK(ml.loglik[i] >= ml.loglik[i - 1] - 1e-12);
}

TEST_CASE("MLE stays physical on noisy data") {
  Rng rng(4);
  const DensityMatrix rho = DensityMatrix::from_pure(random_state(1, rng));
  const MeasurementData d = simulate_tomography_data(rho, 50, rng);
  const TomographyResult ml = qst_mle(d);
  CHECK(ml.min_eigenvalue >= -1e-12);
  CHECK(ml.rho_hat.trace().real() == doctest::Approx(1.0));
}
