#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmlbench/sim.hpp"

namespace qmlbench {

enum class EncodingKind { basis, amplitude, angle, qram };
std::string to_string(EncodingKind k);

struct EncodedInput {
  StateVector state;
  EncodingKind kind = EncodingKind::basis;
  std::vector<double> source;  // flattened classical input
  bool out_of_range = false;   // angle inputs outside [0, 2pi)
};

EncodedInput encode_basis(const std::vector<int>& bits);
EncodedInput encode_amplitude(const Vec& x);
EncodedInput encode_amplitude(const RVec& x);
// axis is one of 'X', 'Y', 'Z'
EncodedInput encode_angle(const RVec& x, char axis = 'X');
EncodedInput encode_qram(const std::vector<std::vector<int>>& dataset);

// per-qubit rotation taking the eigenbasis of each letter to Z (I and Z untouched)
Mat pauli_basis_rotation(const std::string& pauli);

double estimate_pauli_expectation(const DensityMatrix& rho, const std::string& pauli, long long shots, Rng& rng);
double estimate_pauli_expectation(const StateVector& psi, const std::string& pauli, long long shots, Rng& rng);
double estimate_observable(const DensityMatrix& rho, const Observable& obs, long long shots_per_term, Rng& rng);

// coefficients Tr(H P)/2^N; terms below drop_tol are omitted
std::vector<PauliTerm> pauli_decompose(const Mat& h, double drop_tol = 1e-14);

// ---- tomography ----

// One local-Pauli setting, e.g. "XZ". counts[b] is indexed by the outcome
// bitstring b (qubit 0 = MSB, bit 1 means eigenvalue -1). With exact data
// the counts are probabilities and shots is 0.
struct SettingRecord {
  std::string setting;
  std::vector<double> counts;
};

struct MeasurementData {
  int n = 0;
  long long shots = 0;
  std::vector<SettingRecord> records;
};

std::vector<std::string> tomography_settings(int n);
// projector for outcome b of a setting
Mat setting_projector(const std::string& setting, long long outcome);
MeasurementData simulate_tomography_data(const DensityMatrix& rho, long long shots, Rng& rng);

struct TomographyResult {
  Mat rho_hat;
  std::string method;
  int settings_used = 0;
  long long shots_per_setting = 0;
  std::optional<double> fidelity_to_truth;
  double min_eigenvalue = 0.0;
  bool psd_violation = false;
  // MLE only
  std::vector<double> loglik;
  int iterations = 0;
  bool converged = true;
};

TomographyResult qst_linear_inversion(const MeasurementData& data);
TomographyResult qst_mle(const MeasurementData& data, int max_iter = 10000, double tol = 1e-10, double dilution = 0.5);
double log_likelihood(const Mat& rho, const MeasurementData& data);

}  // namespace qmlbench
