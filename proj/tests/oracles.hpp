#pragma once

// Independent reference values for the unit and acceptance tests.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "wcop/functions.hpp"
#include "wcop/series.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// Coefficient n of (1 - z)^(-beta) from the product formula, no recurrence
/// shared with the library: prod_{k<n} (beta + k)/(k + 1), accumulated in logs.
inline double binomial_coeff(double beta, int n) {
  if (n == 0) return 1.0;
  return std::exp(std::lgamma(beta + n) - std::lgamma(beta) - std::lgamma(n + 1.0));
}

/// C(2n, n) / 4^n, the coefficients of (1 - z)^(-1/2).
inline double central_binomial(int n) {
  return std::exp(std::lgamma(2.0 * n + 1.0) - 2.0 * std::lgamma(n + 1.0) - n * std::log(4.0));
}

/// (1/pi) int_D |z|^{2n} (1 - |z|^2)^alpha dA = 2 int_0^1 r^{2n+1} (1 - r^2)^alpha dr.
inline double bergman_moment(int n, double alpha) {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double r) { return 2.0 * std::pow(r, 2 * n + 1) * std::pow((1.0 - r) * (1.0 + r), alpha); };
  return ts.integrate(f, 0.0, 1.0, 1e-15);
}

/// (1/2pi) int_0^{2pi} f by tanh-sinh on [0, 2pi].
template <class F>
double circle_mean(F f, double tol = 1e-12) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, 0.0, 2.0 * M_PI, tol) / (2.0 * M_PI);
}

inline std::vector<cplx> random_coeffs(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(degree + 1);
  for (auto& x : c) x = {g(rng), g(rng)};
  return c;
}

inline cplx random_point(std::mt19937_64& rng, double max_radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(max_radius * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
}

/// z (0.5 - z)/(1 - 0.5 z): inner, vanishes at 0.
inline wcop::FunctionSpec blaschke_half() {
  wcop::InnerFunctionData d;
  d.vanishing_order = 1;
  d.zeros = {0.5};
  return wcop::FunctionSpec::inner(d);
}

inline wcop::FunctionSpec scaled_identity(double s) {
  return wcop::FunctionSpec::affine(0.0, s, wcop::FunctionSpec::identity());
}

}  // namespace oracle
