#include "qmlbench/poly.hpp"

#include <cmath>

namespace qmlbench {

PolySpec PolySpec::monomial(std::vector<cd> c, double bound) {
  PolySpec p;
  p.coeffs = std::move(c);
  p.basis = Basis::monomial;
  p.declared_bound = bound >= 0 ? bound : p.grid_max();
  return p;
}

int PolySpec::degree() const {
  for (int j = (int)coeffs.size() - 1; j >= 0; --j)
    if (std::abs(coeffs[j]) != 0.0) return j;
  return 0;
}

cd PolySpec::eval(double x) const {
  if (coeffs.empty()) return 0.0;
  if (basis == Basis::monomial) {
    cd acc = 0.0;
    for (int j = (int)coeffs.size() - 1; j >= 0; --j) acc = acc * x + coeffs[j];
    return acc;
  }
  // Clenshaw
  const double t = x / domain;
  cd b1 = 0.0, b2 = 0.0;
  for (int j = (int)coeffs.size() - 1; j >= 1; --j) {
    cd b0 = 2.0 * t * b1 - b2 + coeffs[j];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + coeffs[0];
}

double PolySpec::tail_one_norm() const {
  if (basis != Basis::monomial) throw ArgumentError("tail_one_norm needs monomial coefficients");
  double s = 0.0;
  for (size_t j = 1; j < coeffs.size(); ++j) s += std::abs(coeffs[j]);
  return s;
}

cd PolySpec::constant() const {
  if (basis == Basis::monomial) return coeffs.empty() ? cd(0.0) : coeffs[0];
  return eval(0.0);
}

double PolySpec::grid_max(int points) const {
  double m = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = -domain + 2.0 * domain * i / (points - 1);
    m = std::max(m, std::abs(eval(x)));
  }
  return m;
}

double grid_error(const PolySpec& p, const std::function<double(double)>& f, double half_width, int points) {
  double m = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = -half_width + 2.0 * half_width * i / (points - 1);
    m = std::max(m, std::abs(p.eval(x) - f(x)));
  }
  return m;
}

PolySpec poly_approx_exp(double eps, double s) {
  if (!(eps > 0 && eps < 1)) throw ArgumentError("eps must lie in (0, 1)");
  if (eps < 1e-13) throw ArgumentError("eps below 1e-13 is not resolvable in double precision");
  const double a = std::abs(s);
  // Lagrange remainder: e^{|s|} |s|^{r+1} / (r+1)!
  int r = 0;
  double term = a;  // |s|^{r+1}/(r+1)!
  while (std::exp(a) * term > eps) {
    ++r;
    term *= a / (r + 1);
    if (r > 200) break;
  }
  std::vector<cd> c(r + 1);
  double f = 1.0;
  for (int j = 0; j <= r; ++j) {
    c[j] = f;
    f *= s / (j + 1);
  }
  return PolySpec::monomial(c, std::exp(a) + eps);
}

PolySpec poly_approx_cheb(const std::function<double(double)>& f, double half_width, double eps, int max_degree) {
  if (!(eps > 0 && eps < 1)) throw ArgumentError("eps must lie in (0, 1)");
  if (eps < 1e-13) throw ArgumentError("eps below 1e-13 is not resolvable in double precision");
  if (!(half_width > 0)) throw ArgumentError("domain half width must be positive");
  for (int n = 1; n <= max_degree; ++n) {
    // interpolate at the n+1 Chebyshev nodes
    const int m = n + 1;
    std::vector<double> fx(m);
    for (int k = 0; k < m; ++k) fx[k] = f(half_width * std::cos(kPi * (k + 0.5) / m));
    PolySpec p;
    p.basis = PolySpec::Basis::chebyshev;
    p.domain = half_width;
    p.coeffs.resize(m);
    for (int j = 0; j < m; ++j) {
      double s = 0;
      for (int k = 0; k < m; ++k) s += fx[k] * std::cos(kPi * j * (k + 0.5) / m);
      p.coeffs[j] = (j == 0 ? 1.0 : 2.0) * s / m;
    }
    // leave head-room so an independent grid also lands below eps
    if (grid_error(p, f, half_width, 4001) <= 0.5 * eps) {
      p.declared_bound = p.grid_max();
      return p;
    }
  }
  throw NumericError("Chebyshev fit did not reach the requested accuracy");
}

double gelu(double x) { return x * gauss_cdf(x); }
double gauss_cdf(double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); }

PolySpec poly_approx_gelu(double k, double lambda, double eps) {
  if (!(k > 0) || !(lambda > 0)) throw ArgumentError("k and lambda must be positive");
  return poly_approx_cheb([k](double x) { return gelu(k * x); }, lambda, eps);
}

PolySpec poly_approx_gauss_cdf(double k, double lambda, double eps) {
  if (!(k > 0) || !(lambda > 0)) throw ArgumentError("k and lambda must be positive");
  return poly_approx_cheb([k](double x) { return gauss_cdf(k * x); }, lambda, eps);
}

}  // namespace qmlbench
