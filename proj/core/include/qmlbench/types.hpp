#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qmlbench {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Error taxonomy. The CLI maps ValidationError -> exit 2, NumericError -> exit 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : Error {
  using Error::Error;
};
// bad arguments are a flavour of validation failure
struct ArgumentError : ValidationError {
  using ValidationError::ValidationError;
};
struct CapacityError : ValidationError {
  using ValidationError::ValidationError;
};
struct NumericError : Error {
  using Error::Error;
};
struct SingularityError : NumericError {
  using NumericError::NumericError;
};
struct DegenerateError : NumericError {
  using NumericError::NumericError;
};

inline constexpr double kPi = 3.14159265358979323846;

inline bool is_pow2(long long x) { return x > 0 && (x & (x - 1)) == 0; }

inline int log2_exact(long long x) {
  if (!is_pow2(x)) throw ArgumentError("dimension " + std::to_string(x) + " is not a power of two");
  int n = 0;
  while ((1LL << n) < x) ++n;
  return n;
}

inline int ceil_log2(long long x) {
  int n = 0;
  while ((1LL << n) < x) ++n;
  return n;
}

inline long long next_pow2(long long x) { return 1LL << ceil_log2(x < 1 ? 1 : x); }

}  // namespace qmlbench
