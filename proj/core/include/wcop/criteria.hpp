#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcop/functions.hpp"
#include "wcop/grid.hpp"
#include "wcop/operators.hpp"
#include "wcop/report.hpp"
#include "wcop/spaces.hpp"

namespace wcop {

/// Knobs shared by the grid criteria. `order` is the coefficient-route
/// truncation; Hardy pairs with boundary values integrate on the circle
/// instead and ignore it.
struct ProbeOptions {
  int order = 1024;
  Thresholds thresholds;
  bool force_coefficients = false;
};

/// ||W k_w|| for the normalized kernel at every grid point, growth verdict.
/// Points whose kernel norm cannot be resolved are excluded and listed.
CriterionReport kernel_test(const FunctionSpec& h, const FunctionSpec& phi, const SpaceSpec& space,
                            const DiskGrid& grid, const ProbeOptions& opt = {});

/// Same profile as kernel_test with the vanishing verdict. Skipped when
/// `kernel` (a finished kernel_test) shows unbounded evidence; its samples
/// are reused when the grids match.
CriterionReport compactness_profile(const FunctionSpec& h, const FunctionSpec& phi,
                                    const SpaceSpec& space, const DiskGrid& grid,
                                    const ProbeOptions& opt = {},
                                    const CriterionReport* kernel = nullptr);

/// |h(w)| <= B sqrt((1 - |phi(w)|^2)/(1 - |w|^2)) on the grid. The profile
/// is |h(w)| / sqrt(...), i.e. the smallest admissible B at w, so the
/// growth verdict applies to it directly. A violation falsifies B as a
/// bound for ||W||.
CriterionReport pointwise_bound_check(const FunctionSpec& h, const FunctionSpec& phi,
                                      double norm_bound, const DiskGrid& grid,
                                      const Thresholds& thresholds = {});

struct AdeltaOptions {
  double delta = 0.5;
  /// Claimed sup |h| on A_delta = {|phi| >= 1 - delta}; default is the
  /// sampled maximum.
  std::optional<double> c_delta;
  std::size_t boundary_samples = 4096;
  /// ||C_phi||; default sigma_max of the h = 1 truncation at `order`.
  std::optional<double> composition_norm;
};

/// Checks ||W k_w||^2 <= c^2 ||C_phi||^2 + ||h||^2 (1 - |w|^2)/delta^2 at
/// each grid point (c = 0 when A_delta is empty). The profile is the right
/// hand side (square root) and carries the vanishing verdict.
/// A sampled |h| above c_delta on A_delta is reported, not thrown.
CriterionReport adelta_bound_check(const FunctionSpec& h, const FunctionSpec& phi,
                                   const AdeltaOptions& adelta, const DiskGrid& grid,
                                   const ProbeOptions& opt = {});

/// (1 - |phi(w)|^2)/(1 - |w|^2).
double jc_ratio(const FunctionSpec& phi, cplx w);

/// Grid profile of jc_ratio with the growth verdict. For finite Blaschke
/// products the details compare the last level with max |phi'| on the circle.
CriterionReport sup_jc_ratio(const FunctionSpec& phi, const DiskGrid& grid,
                             const Thresholds& thresholds = {});

/// Radial probe of (1 - |phi(r zeta)|)/(1 - r) at r_i = 1 - 10^{-i}.
struct BoundaryProbe {
  double angle = 0.0;
  std::vector<double> radii;
  std::vector<double> quotients;
  std::vector<double> derivative_moduli;  // |phi'(r zeta)|, empty if unavailable
  double cauchy_gap = 0.0;                // |q_6 - q_5| / |q_6|
  std::optional<double> limit;            // Richardson value when Cauchy
  bool divergent = false;

  nlohmann::ordered_json to_json() const;
};

BoundaryProbe jc_quotient_probe(const FunctionSpec& phi, double angle,
                                const Thresholds& thresholds = {}, int steps = 6);

struct AhernClarkResult {
  Verdict classification = Verdict::Finite;  // Finite or Infinite
  double value = 0.0;                        // finite part, all terms
  double zero_part = 0.0;
  double atom_part = 0.0;
  double vanishing_part = 0.0;
  std::optional<double> upper_bound;         // value + tail bound
  std::string reason;

  nlohmann::ordered_json to_json() const;
};

/// sum (1 - |a_n|^2)/|zeta - a_n|^2 + 2 sum mass_k/|zeta_k - zeta|^2 + N.
/// Infinite when an atom sits at zeta, the tail bound is infinite, or the
/// zero terms (sorted by modulus) still grow geometrically while the zeros
/// reach the circle.
AhernClarkResult ahern_clark_sum(const InnerFunctionData& d, double angle,
                                 std::optional<double> tail_bound = {},
                                 const Thresholds& thresholds = {});
/// Throws DomainError unless |zeta| = 1 within 1e-12.
AhernClarkResult ahern_clark_sum(const InnerFunctionData& d, cplx zeta,
                                 std::optional<double> tail_bound = {},
                                 const Thresholds& thresholds = {});

/// Tensor quadrature for schatten_integral: annuli [r_{j-1}, r_j] with
/// r_j = 1 - 2^{-j}, Gauss-Legendre in r, trapezoid in angle.
struct QuadratureSpec {
  int annuli = 16;
  int radial_nodes = 8;
  int angles = 64;
  /// Bergman only: Normalized or NormalizedDerivative.
  KernelKind bergman_kernel = KernelKind::Normalized;
};

/// int ||W K_w||^p dA(w) / (pi (1 - |w|^2)^2), K the normalized derivative
/// kernel in Hardy (1 <= p < 2 only) and the selected kernel in Bergman.
/// Levels are annuli; the details hold the annulus sums, the total, and a
/// second-resolution value when `check` is given.
CriterionReport schatten_integral(const FunctionSpec& h, const FunctionSpec& phi,
                                  const SpaceSpec& space, double p,
                                  const QuadratureSpec& quad = {},
                                  const ProbeOptions& opt = {},
                                  std::optional<QuadratureSpec> check = {});

/// Gauss-Legendre nodes and weights on [a, b] (Golub-Welsch).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n, double a, double b);

struct BoxMeasure {
  double delta = 0.0;
  double measure = 0.0;
  double ratio = 0.0;  // measure / delta (Hardy), measure / delta^{2+alpha} (Bergman)
};

struct CarlesonOptions {
  std::vector<double> deltas = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
  std::size_t samples = std::size_t{1} << 20;  // Hardy circle samples
  int bergman_annuli = 16;                     // Bergman polar grid
  int bergman_radial_nodes = 16;
  int bergman_angles = 4096;
};

/// mu(S(zeta, delta)) with S = {|z - zeta| < delta}: Hardy pushes |h|^2 dm
/// forward by phi on the circle r = 1 - 1e-8, Bergman pushes
/// |h|^2 (1 - |z|^2)^alpha dA/pi. Growth verdict on the ratios by
/// decreasing delta. Throws ParameterError unless 0 < delta <= 2.
CriterionReport carleson_box_measure(const FunctionSpec& h, const FunctionSpec& phi,
                                     const SpaceSpec& space, double angle,
                                     const CarlesonOptions& opt = {},
                                     const Thresholds& thresholds = {});
std::vector<BoxMeasure> box_measures(const CriterionReport& carleson);

/// adjoint_kernel_check over a point list; residual profile, verdict
/// Bounded when every residual is at most `tolerance`.
CriterionReport adjoint_kernel_report(const TruncationMatrix& a, const FunctionSpec& h,
                                      const FunctionSpec& phi, const std::vector<cplx>& points,
                                      double tolerance = 1e-6);

}  // namespace wcop
