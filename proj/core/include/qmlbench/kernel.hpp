#pragma once

#include <string>
#include <vector>

#include "qmlbench/readout.hpp"

namespace qmlbench {

using Dataset = std::vector<RVec>;

struct ClassicalKernel {
  enum class Kind { polynomial, gaussian, sigmoid } kind = Kind::gaussian;
  int m = 2;           // polynomial degree
  double c = 0.0;      // polynomial offset
  double sigma = 1.0;  // gaussian width
  double a = 1.0, b = 0.0;  // sigmoid tanh(a x.x' + b)
};

double classical_kernel(const ClassicalKernel& k, const RVec& x, const RVec& y);

enum class FeatureMap { basis, amplitude, angleX, angleY, single_qubit_rx };
FeatureMap parse_feature_map(const std::string& s);
std::string to_string(FeatureMap m);

StateVector feature_state(FeatureMap map, const RVec& x);
// exact overlap |<phi(x)|phi(x')>|^2
double quantum_kernel(FeatureMap map, const RVec& x, const RVec& y);
// shot-based variants; shots must be positive
double quantum_kernel_swap_test(FeatureMap map, const RVec& x, const RVec& y, long long shots, Rng& rng);
double quantum_kernel_adjoint(FeatureMap map, const RVec& x, const RVec& y, long long shots, Rng& rng);

// the two closed forms quoted for the angle-X kernel
double rx_kernel_half_angle(const RVec& x, const RVec& y);  // prod cos^2((x-x')/2)
double rx_kernel_full_angle(const RVec& x, const RVec& y);  // prod |cos(x-x')|^2

RMat kernel_matrix(const Dataset& data, FeatureMap map);
RMat kernel_matrix(const Dataset& data, const ClassicalKernel& k);

struct RidgeModel {
  RVec a;
  double lambda = 0.0;
};
RidgeModel ridge_fit(const RMat& K, const RVec& y, double lambda);
double ridge_predict(const RidgeModel& m, const RVec& kvec);

struct Complexity {
  double value = 0.0;
  bool pinv_fallback = false;
};
Complexity model_complexity(const RMat& K, const RVec& y);

// rescale to trace n
RMat normalize_trace(const RMat& K);
RMat sqrt_psd(const RMat& K);

struct GeometricDifference {
  double g = 0.0;
  double reg = 0.0;  // regulariser added to K_C, 0 if none
};
GeometricDifference geometric_difference(const RMat& KC, const RMat& KQ);

struct AdversarialLabels {
  RVec y;               // real labels
  std::vector<int> pm;  // thresholded +-1
  double s_c = 0, s_q = 0, ratio = 0, g2 = 0;
};
// works on the trace-normalised kernels, like geometric_difference
AdversarialLabels adversarial_dataset(const RMat& KC, const RMat& KQ);
std::vector<int> median_threshold(const RVec& y);

struct RiskBounds {
  double train_bound = 0;
  double gen_bound = 0;  // sqrt(y'(K+l)^-1 K (K+l)^-1 y / n) + sqrt(log(1/delta)/n)
  double gen_quadratic = 0;  // y'(K+l)^-1 K (K+l)^-1 y / n
  double gen_detailed = 0;   // 5 * gen_quadratic + 3 sqrt(log(2/delta)/(2n))
};
RiskBounds kernel_risk_bounds(const RMat& K, const RVec& y, double lambda, double delta);

// ---- C2QE ----
int c2qe_qubits(long long d);
Mat c2qe_embed(const RVec& r);
// Monte-Carlo realisation of the sampling algorithm: mixture of `draws` samples
Mat c2qe_sample(const RVec& r, long long draws, Rng& rng);

// ---- Fourier table of angle-encoded kernels ----
struct FourierTable {
  int d = 0;
  // index over (s_1..s_d, t_1..t_d), each in {-1,0,1}, first coordinate most significant
  std::vector<cd> c;
  double residual = 0;
  double condition = 1;
  cd at(const std::vector<int>& s, const std::vector<int>& t) const;
  double eval(const RVec& x, const RVec& y) const;
};
FourierTable kernel_fourier_decompose(FeatureMap map, int d, int grid = 5);

}  // namespace qmlbench
