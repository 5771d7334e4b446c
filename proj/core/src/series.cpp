#include "wcop/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wcop/errors.hpp"
#include "wcop/fft.hpp"

namespace wcop {
namespace {

constexpr int kDirectProductLimit = 48;

bool all_finite(const std::vector<cplx>& v) {
  return std::all_of(v.begin(), v.end(), [](cplx c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

// Zero-padded copy of the first n + 1 coefficients, transformed in place.
std::vector<cplx> spectrum(std::span<const cplx> coeffs, int n,
                           std::size_t length) {
  std::vector<cplx> buf(length);
  std::copy_n(coeffs.begin(), std::min<std::size_t>(coeffs.size(), n + 1),
              buf.begin());
  fft::forward(buf);
  return buf;
}

}  // namespace

PowerSeries::PowerSeries() : coeffs_(1, cplx{}) {}

PowerSeries::PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ParameterError("power series needs at least one coefficient");
  if (!all_finite(coeffs_)) throw ParameterError("power series has a non-finite coefficient");
}

PowerSeries PowerSeries::zero(int order) {
  if (order < 0) throw ParameterError("negative truncation order");
  return PowerSeries(std::vector<cplx>(order + 1));
}

PowerSeries PowerSeries::constant(cplx value, int order) {
  auto c = std::vector<cplx>(std::max(order, 0) + 1);
  c[0] = value;
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::monomial(int degree, int order, cplx scale) {
  if (degree < 0) throw ParameterError("negative monomial degree");
  auto c = std::vector<cplx>(std::max(order, 0) + 1);
  if (degree <= order) c[degree] = scale;
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::resized(int order) const {
  if (order < 0) throw ParameterError("negative truncation order");
  auto c = coeffs_;
  c.resize(order + 1);
  return PowerSeries(std::move(c));
}

cplx PowerSeries::eval(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx PowerSeries::derivative_eval(cplx z) const {
  cplx acc{};
  for (int n = order(); n >= 1; --n) acc = acc * z + static_cast<double>(n) * coeffs_[n];
  return acc;
}

int PowerSeries::effective_degree(double relative) const {
  double peak = 0.0;
  for (auto c : coeffs_) peak = std::max(peak, std::abs(c));
  for (int n = order(); n > 0; --n)
    if (std::abs(coeffs_[n]) > relative * peak) return n;
  return 0;
}

PowerSeries operator+(const PowerSeries& f, const PowerSeries& g) {
  auto c = f.resized(std::max(f.order(), g.order())).vector();
  for (int n = 0; n <= g.order(); ++n) c[n] += g[n];
  return PowerSeries(std::move(c));
}

PowerSeries operator-(const PowerSeries& f, const PowerSeries& g) {
  return f + (-1.0) * g;
}

PowerSeries operator*(cplx scale, const PowerSeries& f) {
  auto c = f.vector();
  for (auto& x : c) x *= scale;
  return PowerSeries(std::move(c));
}

PowerSeries multiply(const PowerSeries& f, const PowerSeries& g) {
  const int n = std::min(f.order(), g.order());
  std::vector<cplx> out(n + 1);
  if (n <= kDirectProductLimit) {
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) out[i + j] += f[i] * g[j];
    return PowerSeries(std::move(out));
  }
  const std::size_t length = fft::next_power_of_two(2 * (n + 1));
  auto a = spectrum(f.coeffs(), n, length);
  auto b = spectrum(g.coeffs(), n, length);
  for (std::size_t k = 0; k < length; ++k) a[k] *= b[k];
  fft::backward(a);
  const double scale = 1.0 / static_cast<double>(length);
  for (int i = 0; i <= n; ++i) out[i] = a[i] * scale;
  return PowerSeries(std::move(out));
}

Composition compose(const PowerSeries& f, const PowerSeries& phi) {
  const cplx centre = phi[0];
  if (std::abs(centre) >= 1.0)
    throw DomainError("compose: |phi(0)| >= 1, the composition does not converge");
  const int n = std::min(f.order(), phi.order());

  // Horner: f(phi) = f_0 + phi (f_1 + phi (f_2 + ...)), truncated each step.
  std::vector<cplx> acc(n + 1);
  acc[0] = f[n];
  if (n > 0) {
    const std::size_t length = fft::next_power_of_two(2 * (n + 1));
    const auto phi_hat = spectrum(phi.coeffs(), n, length);
    const double scale = 1.0 / static_cast<double>(length);
    std::vector<cplx> buf(length);
    for (int k = n - 1; k >= 0; --k) {
      std::fill(buf.begin(), buf.end(), cplx{});
      std::copy(acc.begin(), acc.end(), buf.begin());
      fft::forward(buf);
      for (std::size_t i = 0; i < length; ++i) buf[i] *= phi_hat[i];
      fft::backward(buf);
      for (int i = 0; i <= n; ++i) acc[i] = buf[i] * scale;
      acc[0] += f[k];
    }
  }

  Composition out{PowerSeries(std::move(acc)), 0.0};
  if (std::abs(centre) > 0.0) {
    const double c = std::abs(centre);
    out.tail_error = std::abs(f[n]) * std::pow(c, n + 1) / (1.0 - c);
  }
  return out;
}

PowerSeries binomial_series(double beta, int order) {
  if (order < 0) throw ParameterError("negative truncation order");
  std::vector<cplx> c(order + 1);
  c[0] = 1.0;
  double a = 1.0;
  for (int n = 1; n <= order; ++n) {
    a *= (n - 1 + beta) / n;
    c[n] = a;
  }
  return PowerSeries(std::move(c));
}

PowerSeries exp_series(const PowerSeries& g) {
  const int n = g.order();
  std::vector<cplx> e(n + 1);
  e[0] = std::exp(g[0]);
  for (int m = 1; m <= n; ++m) {
    cplx acc{};
    for (int k = 1; k <= m; ++k) acc += static_cast<double>(k) * g[k] * e[m - k];
    e[m] = acc / static_cast<double>(m);
  }
  return PowerSeries(std::move(e));
}

BoundarySamples sample_circle(const PowerSeries& f, double radius,
                              std::size_t count) {
  if (count == 0) throw ParameterError("sample count must be positive");
  std::vector<cplx> buf(count);
  double rn = 1.0;
  for (int n = 0; n <= f.order(); ++n) {
    buf[static_cast<std::size_t>(n) % count] += f[n] * rn;
    rn *= radius;
  }
  fft::backward(buf);
  return {radius, std::move(buf)};
}

PowerSeries coefficients_from_samples(const BoundarySamples& samples, int order,
                                      bool allow_unit_circle) {
  const std::size_t m = samples.values.size();
  const double rho = samples.radius;
  if (!(rho > 0.0) || rho > 1.0 || (rho == 1.0 && !allow_unit_circle))
    throw SamplingError("sampling radius must lie in (0, 1), got " + std::to_string(rho));
  if (order < 0) throw ParameterError("negative truncation order");
  if (!fft::is_power_of_two(m))
    throw AliasingError("sample count must be a power of two");
  if (m < 4 * static_cast<std::size_t>(std::max(order, 1)))
    throw AliasingError("DFT length " + std::to_string(m) + " is shorter than 4N = " +
                        std::to_string(4 * order));
  std::vector<cplx> buf = samples.values;
  fft::forward(buf);
  std::vector<cplx> c(order + 1);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (int n = 0; n <= order; ++n) c[n] = buf[n] * inv_m * std::pow(rho, -n);
  return PowerSeries(std::move(c));
}

double default_sampling_radius(int order) {
  return std::exp(-6.0 / std::max(order, 1));
}

PowerSeries sampled_taylor_coefficients(const std::function<cplx(cplx)>& f,
                                        int order, double radius,
                                        std::size_t count) {
  if (count == 0) count = fft::next_power_of_two(4 * (static_cast<std::size_t>(order) + 1));
  if (!(radius > 0.0) || radius >= 1.0)
    throw SamplingError("sampling radius must lie in (0, 1), got " + std::to_string(radius));
  BoundarySamples s{radius, std::vector<cplx>(count)};
  const double step = 2.0 * std::numbers::pi / static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k)
    s.values[k] = f(std::polar(radius, step * static_cast<double>(k)));
  return coefficients_from_samples(s, order);
}

}  // namespace wcop
