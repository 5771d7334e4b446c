#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wcop {

using cplx = std::complex<double>;

/// Truncated Taylor series a_0 + a_1 z + ... + a_N z^N of an analytic
/// function on the unit disc. Immutable after construction.
class PowerSeries {
 public:
  /// The zero series of order 0.
  PowerSeries();

  /// Throws ParameterError when coeffs is empty or holds a non-finite entry.
  explicit PowerSeries(std::vector<cplx> coeffs);

  static PowerSeries zero(int order);
  static PowerSeries constant(cplx value, int order);
  static PowerSeries monomial(int degree, int order, cplx scale = 1.0);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  const std::vector<cplx>& vector() const { return coeffs_; }
  cplx operator[](int n) const { return n <= order() ? coeffs_[n] : cplx{}; }

  /// Drops or zero-pads coefficients so the result has the given order.
  PowerSeries resized(int order) const;

  /// Horner evaluation of the truncated polynomial.
  cplx eval(cplx z) const;
  cplx derivative_eval(cplx z) const;

  /// Index of the last coefficient above `relative * max|a_n|`.
  int effective_degree(double relative = 1e-18) const;

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  std::vector<cplx> coeffs_;
};

PowerSeries operator+(const PowerSeries& f, const PowerSeries& g);
PowerSeries operator-(const PowerSeries& f, const PowerSeries& g);
PowerSeries operator*(cplx scale, const PowerSeries& f);

/// Cauchy product truncated at min(f.order(), g.order()).
PowerSeries multiply(const PowerSeries& f, const PowerSeries& g);

struct Composition {
  PowerSeries series;
  /// Estimated coefficient error from truncating f; zero when phi(0) = 0.
  double tail_error = 0.0;
};

/// Truncation of f o phi at the common order. Requires |phi(0)| < 1.
Composition compose(const PowerSeries& f, const PowerSeries& phi);

/// Series of (1 - z)^(-beta), principal branch.
PowerSeries binomial_series(double beta, int order);

/// Series of exp(g) by the recurrence n e_n = sum_k k g_k e_{n-k}.
PowerSeries exp_series(const PowerSeries& g);

/// Values of a function at radius * exp(2 pi i k / M), k = 0..M-1.
struct BoundarySamples {
  double radius = 1.0;
  std::vector<cplx> values;
};

/// Samples the truncated polynomial on the circle |z| = radius with one FFT.
BoundarySamples sample_circle(const PowerSeries& f, double radius,
                              std::size_t count);

/// Taylor coefficients recovered from circle samples by a DFT and division
/// by radius^n. Throws SamplingError unless 0 < radius < 1 (radius = 1 is
/// accepted when allow_unit_circle is set), AliasingError when the sample
/// count is not a power of two or is below 4 * order.
PowerSeries coefficients_from_samples(const BoundarySamples& samples,
                                      int order,
                                      bool allow_unit_circle = false);

/// exp(-6 / N): balances tail decay against the rho^-n amplification.
double default_sampling_radius(int order);

/// Sampled Taylor coefficients of a function analytic in the open disc.
/// count = 0 picks the smallest power of two >= 4 * (order + 1).
PowerSeries sampled_taylor_coefficients(const std::function<cplx(cplx)>& f,
                                        int order, double radius,
                                        std::size_t count = 0);

}  // namespace wcop
