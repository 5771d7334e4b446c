#include "wcop/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "numeric_util.hpp"
#include "wcop/errors.hpp"
#include "wcop/fft.hpp"

namespace wcop {

SpaceSpec SpaceSpec::bergman(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha))
    throw ParameterError("Bergman weight needs alpha > -1, got " + std::to_string(alpha));
  return {Kind::Bergman, alpha};
}

double monomial_norm_sq(const SpaceSpec& space, int n) {
  if (n < 0) throw ParameterError("negative monomial degree");
  if (space.is_hardy()) return 1.0;
  const double a = space.alpha;
  return std::exp(std::lgamma(n + 1.0) + std::lgamma(a + 1.0) - std::lgamma(n + a + 2.0));
}

std::vector<double> monomial_norms_sq(const SpaceSpec& space, int order) {
  std::vector<double> b(std::max(order, 0) + 1);
  for (int n = 0; n <= order; ++n) b[n] = monomial_norm_sq(space, n);
  return b;
}

cplx inner_product(const SpaceSpec& space, const PowerSeries& f, const PowerSeries& g) {
  const int n = std::min(f.order(), g.order());
  std::vector<cplx> terms(n + 1);
  for (int k = 0; k <= n; ++k) terms[k] = f[k] * std::conj(g[k]) * monomial_norm_sq(space, k);
  return detail::pairwise_sum<cplx>(terms);
}

double norm(const SpaceSpec& space, const PowerSeries& f) {
  std::vector<double> terms(f.order() + 1);
  for (int k = 0; k <= f.order(); ++k) terms[k] = std::norm(f[k]) * monomial_norm_sq(space, k);
  return std::sqrt(detail::pairwise_sum<double>(terms));
}

double kernel_norm_sq(const SpaceSpec& space, KernelKind kind, cplx w) {
  if (!detail::finite(w) || std::abs(w) >= 1.0) throw DomainError("kernel point needs |w| < 1");
  if (kind == KernelKind::Normalized || kind == KernelKind::NormalizedDerivative) return 1.0;
  const double r = std::norm(w);
  const double q = 1.0 - r;
  const bool deriv = kind == KernelKind::Derivative;
  if (space.is_hardy()) return deriv ? (1.0 + r) / (q * q * q) : 1.0 / q;
  const double a = space.alpha;
  if (!deriv) return (a + 1.0) / std::pow(q, a + 2.0);
  return (a + 1.0) * (a + 2.0) * (1.0 + (a + 2.0) * r) / std::pow(q, a + 4.0);
}

cplx kernel_eval(const KernelFamily& family, cplx z) {
  const cplx w = family.w;
  const bool deriv = family.kind == KernelKind::Derivative ||
                     family.kind == KernelKind::NormalizedDerivative;
  const bool normalized = family.kind == KernelKind::Normalized ||
                          family.kind == KernelKind::NormalizedDerivative;
  const double nsq = kernel_norm_sq(family.space, deriv ? KernelKind::Derivative
                                                        : KernelKind::Standard, w);
  const cplx d = 1.0 - std::conj(w) * z;
  cplx v;
  if (family.space.is_hardy()) {
    v = deriv ? z / (d * d) : 1.0 / d;
  } else {
    const double a = family.space.alpha;
    v = deriv ? (a + 1.0) * (a + 2.0) * z * std::pow(d, -(a + 3.0))
              : (a + 1.0) * std::pow(d, -(a + 2.0));
  }
  return normalized ? v / std::sqrt(nsq) : v;
}

PowerSeries kernel_coeffs(const KernelFamily& family, int order) {
  const cplx w = family.w;
  if (!detail::finite(w) || std::abs(w) >= 1.0) throw DomainError("kernel point needs |w| < 1");
  if (order < 0) throw ParameterError("negative truncation order");
  const bool deriv = family.kind == KernelKind::Derivative ||
                     family.kind == KernelKind::NormalizedDerivative;
  const bool normalized = family.kind == KernelKind::Normalized ||
                          family.kind == KernelKind::NormalizedDerivative;
  const cplx wb = std::conj(w);
  std::vector<cplx> c(order + 1);
  cplx p = 1.0;  // conj(w)^n, or conj(w)^{n-1} for the derivative kind
  for (int n = 0; n <= order; ++n) {
    const double b = monomial_norm_sq(family.space, n);
    if (deriv) {
      if (n > 0) {
        c[n] = static_cast<double>(n) * p / b;
        p *= wb;
      }
    } else {
      c[n] = p / b;
      p *= wb;
    }
  }
  if (normalized) {
    const double s = 1.0 / std::sqrt(kernel_norm_sq(family.space,
                                                    deriv ? KernelKind::Derivative
                                                          : KernelKind::Standard,
                                                    w));
    for (auto& x : c) x *= s;
  }
  return PowerSeries(std::move(c));
}

ModelProjection kphi_project(const PowerSeries& h, const FunctionSpec& phi, int order) {
  if (order < 1) throw ParameterError("projection order must be >= 1");
  const auto gate = inner_gate(phi);
  if (!gate.passed) {
    std::ostringstream os;
    os.precision(17);
    os << "symbol is not inner: boundary modulus deviates from 1 by " << gate.max_deviation;
    throw PreconditionError(os.str());
  }
  const std::size_t m = fft::next_power_of_two(
      std::max<std::size_t>({4096, 8 * (static_cast<std::size_t>(order) + 1),
                             2 * (static_cast<std::size_t>(h.order()) + 1)}));
  const double radius = has_boundary_values(phi) ? 1.0 : 1.0 - 1e-8;

  auto hs = sample_circle(h, radius, m).values;
  std::vector<cplx> ps(m);
  const double step = detail::kTwoPi / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k)
    ps[k] = eval(phi, std::polar(radius, step * static_cast<double>(k)));

  std::vector<cplx> buf(m);
  for (std::size_t k = 0; k < m; ++k) buf[k] = std::conj(ps[k]) * hs[k];
  fft::forward(buf);
  // Indices >= M/2 stand for negative frequencies; drop the rest.
  std::fill(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(m / 2), cplx{});
  fft::backward(buf);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) buf[k] *= ps[k] * inv_m;
  fft::forward(buf);
  std::vector<cplx> c(order + 1);
  for (int n = 0; n <= order; ++n) c[n] = buf[n] * inv_m;
  ModelProjection out{PowerSeries(std::move(c)), 0.0};

  const auto pc = taylor_coefficients(phi, order);
  for (int k = 0; k <= order / 2; ++k) {
    cplx acc{};
    for (int n = k; n <= order; ++n) acc += out.value[n] * std::conj(pc[n - k]);
    out.orthogonality_residual = std::max(out.orthogonality_residual, std::abs(acc));
  }
  return out;
}

}  // namespace wcop
