#pragma once

#include <functional>
#include <vector>

#include "qmlbench/types.hpp"

namespace qmlbench {

// Polynomial either in monomials c_0 + c_1 x + ... or in Chebyshev
// polynomials T_j(x / domain). Monomial is what the block-encoding constructions
// consume; Chebyshev keeps high-degree fits of erf/GELU well conditioned.
struct PolySpec {
  enum class Basis { monomial, chebyshev };
  std::vector<cd> coeffs;
  Basis basis = Basis::monomial;
  double domain = 1.0;
  double declared_bound = 0.0;  // max |P| on the domain

  static PolySpec monomial(std::vector<cd> c, double bound = -1.0);
  int degree() const;
  cd eval(double x) const;
  double eval_real(double x) const { return eval(x).real(); }
  // sum_{j>=1} |c_j| (monomial basis only)
  double tail_one_norm() const;
  cd constant() const;
  // sup |P| on a grid over [-domain, domain]
  double grid_max(int points = 10001) const;
};

// sup |P(x) - f(x)| over an even grid on [-half_width, half_width]
double grid_error(const PolySpec& p, const std::function<double(double)>& f, double half_width, int points = 10000);

// Taylor truncation of exp(s x) on [-1,1] with remainder bound <= eps
PolySpec poly_approx_exp(double eps, double s = 1.0);
// Chebyshev fit of f on [-half_width, half_width] to grid error <= eps
PolySpec poly_approx_cheb(const std::function<double(double)>& f, double half_width, double eps, int max_degree = 400);
// GELU(k x) on x in [-lambda, lambda]
PolySpec poly_approx_gelu(double k, double lambda, double eps);
// 1/2 (1 + erf(k x / sqrt 2)) on x in [-lambda, lambda]
PolySpec poly_approx_gauss_cdf(double k, double lambda, double eps);

double gelu(double x);
double gauss_cdf(double x);

}  // namespace qmlbench
