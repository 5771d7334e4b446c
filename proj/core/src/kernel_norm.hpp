#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wcop/functions.hpp"
#include "wcop/spaces.hpp"

namespace wcop::detail {

struct CircleMean {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  int nonfinite = 0;
};

/// (1/2pi) int_0^{2pi} f(theta) dtheta by Gauss-Kronrod 7-15 on panels cut at
/// `breaks`, each breakpoint side graded with theta - a ~ t^8.
CircleMean circle_mean(const std::function<double(double)>& f, std::vector<double> breaks,
                       double rel_tol, unsigned max_depth = 12);

struct KernelNormOptions {
  int order = 1024;               // coefficient route truncation
  double rel_tol = 1e-10;         // boundary route quadrature
  double tail_tolerance = 1e-6;   // coefficient route tail energy
  bool force_coefficients = false;
};

struct KernelNormValue {
  double value = 0.0;
  bool ok = true;
  std::string reason;  // set when !ok
};

/// ||h * (K_w o phi)|| in the space, K_w the normalized standard or
/// derivative kernel. Hardy with boundary values uses the exact boundary
/// L^2 integral; otherwise Taylor coefficients through N are sampled and a
/// point whose energy in (N, 2N] is above the tolerance is rejected.
class KernelNorm {
 public:
  KernelNorm(const FunctionSpec& h, const FunctionSpec& phi, SpaceSpec space, KernelKind kind,
             KernelNormOptions options);

  KernelNormValue operator()(cplx w) const;
  bool boundary_route() const { return boundary_; }
  const char* route_name() const { return boundary_ ? "boundary_quadrature" : "coefficients"; }

  /// Kernel factor K_w(z) with the normalization folded in.
  cplx kernel_value(cplx w, cplx z) const;

 private:
  KernelNormValue boundary_value(cplx w) const;
  KernelNormValue coefficient_value(cplx w) const;
  std::vector<double> breakpoints(cplx w) const;

  FunctionSpec h_;
  FunctionSpec phi_;
  SpaceSpec space_;
  KernelKind kind_;
  KernelNormOptions opt_;
  bool boundary_ = false;

  // boundary route
  std::vector<double> fixed_breaks_;
  std::vector<cplx> mesh_phi_;

  // coefficient route
  double radius_ = 0.0;
  std::vector<cplx> h_samples_;
  std::vector<cplx> phi_samples_;
  std::vector<double> beta_;
};

/// Complex power with a real exponent; integer exponents use repeated
/// multiplication.
cplx real_power(cplx z, double e);

}  // namespace wcop::detail
