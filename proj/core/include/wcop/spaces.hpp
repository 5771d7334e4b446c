#pragma once

#include <string>
#include <vector>

#include "wcop/functions.hpp"
#include "wcop/series.hpp"

namespace wcop {

/// Hardy H^2 or the weighted Bergman space A^2_alpha with norm
/// (1/pi) int |f|^2 (1 - |z|^2)^alpha dA.
struct SpaceSpec {
  enum class Kind { Hardy, Bergman };
  Kind kind = Kind::Hardy;
  double alpha = 0.0;  // Bergman only

  static SpaceSpec hardy() { return {}; }
  /// Throws ParameterError unless alpha > -1.
  static SpaceSpec bergman(double alpha);

  bool is_hardy() const { return kind == Kind::Hardy; }
  std::string name() const { return is_hardy() ? "hardy" : "bergman"; }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

/// ||z^n||^2: 1 for Hardy, B(n+1, alpha+1) for Bergman (via lgamma).
double monomial_norm_sq(const SpaceSpec& space, int n);
std::vector<double> monomial_norms_sq(const SpaceSpec& space, int order);

cplx inner_product(const SpaceSpec& space, const PowerSeries& f, const PowerSeries& g);
double norm(const SpaceSpec& space, const PowerSeries& f);

enum class KernelKind { Standard, Normalized, Derivative, NormalizedDerivative };

struct KernelFamily {
  SpaceSpec space;
  KernelKind kind = KernelKind::Standard;
  cplx w;
};

/// Coefficients of the kernel at w through order N. Standard: conj(w)^n / ||z^n||^2;
/// derivative: n conj(w)^{n-1} / ||z^n||^2 (the conj(w)-derivative of the
/// standard kernel). Normalized kinds divide by the exact norm.
/// Throws DomainError for |w| >= 1.
PowerSeries kernel_coeffs(const KernelFamily& family, int order);

/// Closed-form squared norm of the standard or derivative kernel:
///   Hardy      1/(1-r),  (1+r)/(1-r)^3
///   Bergman    (a+1)/(1-r)^{a+2},  (a+1)(a+2)(1+(a+2)r)/(1-r)^{a+4}
/// with r = |w|^2. Normalized kinds give 1.
double kernel_norm_sq(const SpaceSpec& space, KernelKind kind, cplx w);

/// Closed-form value of the kernel at z, |z| <= 1:
///   Hardy    1/(1 - conj(w) z),  z/(1 - conj(w) z)^2
///   Bergman  (a+1)/(1 - conj(w) z)^{a+2},  (a+1)(a+2) z/(1 - conj(w) z)^{a+3}
/// scaled to unit norm for the normalized kinds.
cplx kernel_eval(const KernelFamily& family, cplx z);

struct ModelProjection {
  PowerSeries value;
  /// max_{k <= N/2} |<P, phi z^k>| in H^2.
  double orthogonality_residual = 0.0;
};

/// P_{K_phi} h = phi P_-(conj(phi) h) in H^2 from boundary samples.
/// P_- keeps strictly negative frequencies. Throws PreconditionError when
/// phi fails the inner-function gate.
ModelProjection kphi_project(const PowerSeries& h, const FunctionSpec& phi, int order);

}  // namespace wcop
