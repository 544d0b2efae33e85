#include "doctest.h"
#include "qmlbench/sim.hpp"

using namespace qmlbench;

TEST_CASE("bell state from H and CNOT") {
  StateVector psi = StateVector::zero(2);
  psi = apply_gate(psi, gates::H(), {0});
  psi = apply_gate(psi, gates::CNOT(), {0, 1});
  const auto p = probabilities(psi);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[3] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.0));
}

TEST_CASE("qubit 0 is the most significant bit") {
  const StateVector psi = apply_gate(StateVector::zero(3), gates::X(), {0});
  CHECK(std::abs(psi.amps(4)) == doctest::Approx(1.0));
}

TEST_CASE("rotations are half-angle exponentials") {
  const Mat rx = gates::RX(kPi).m;
  CHECK(std::abs(rx(0, 1) - cd(0, -1)) < 1e-12);
  CHECK(is_unitary(gates::RY(0.7).m));
}

TEST_CASE("depolarizing channel on |0>") {
  const DensityMatrix out = apply_channel(DensityMatrix::from_pure(StateVector::zero(1)), channels::depolarizing(0.5));
  CHECK(out.m(0, 0).real() == doctest::Approx(0.75));
  CHECK(purity(out) == doctest::Approx(1 - 0.5 + 0.125));
}

TEST_CASE("pauli channel probabilities must sum to one") {
  CHECK_THROWS_AS(channels::pauli(0.5, 0.5, 0.5, 0.0), ValidationError);
}

TEST_CASE("Stinespring dilation reproduces the channel") {
  Rng rng(1);
  const DensityMatrix rho = random_density(1, rng);
  const QuantumChannel ch = channels::pauli(0.7, 0.1, 0.1, 0.1);
  const Dilation d = stinespring_dilation(ch);
  CHECK((stinespring_apply(rho, d.u, d.env).m - apply_channel(rho, ch).m).norm() < 1e-12);
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
  StateVector psi = apply_gate(StateVector::zero(2), gates::H(), {0});
  psi = apply_gate(psi, gates::CNOT(), {0, 1});
  const DensityMatrix r = partial_trace(DensityMatrix::from_pure(psi), {0});
  CHECK((r.m - Mat::Identity(2, 2) / 2.0).norm() < 1e-12);
}

TEST_CASE("capacity cap") {
  CHECK_THROWS_AS(check_capacity(qubit_cap() + 1), CapacityError);
  CHECK_NOTHROW(check_capacity(qubit_cap()));
}

TEST_CASE("haar unitaries are unitary and seeded") {
  Rng a(9), b(9);
  const Mat u = haar_random_unitary(4, a), v = haar_random_unitary(4, b);
  CHECK(is_unitary(u));
  CHECK((u - v).norm() == 0.0);
}

TEST_CASE("sample counts follow the distribution size") {
  Rng rng(3);
  const auto c = sample_counts({0.25, 0.75}, 1000, rng);
  CHECK(c[0] + c[1] == 1000);
}

TEST_CASE("trace distance of orthogonal states") {
  const DensityMatrix a = DensityMatrix::from_pure(StateVector::basis(1, 0));
  const DensityMatrix b = DensityMatrix::from_pure(StateVector::basis(1, 1));
  CHECK(trace_distance(a.m, b.m) == doctest::Approx(1.0));
}
