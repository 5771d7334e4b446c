#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wcop/series.hpp"

namespace wcop {

/// Point mass of a singular measure on the circle, located at exp(i angle).
struct Atom {
  double angle = 0.0;
  double mass = 0.0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite data of an inner function
///   e^{i rotation} z^N prod_n (|a_n|/a_n)(a_n - z)/(1 - conj(a_n) z)
///     * exp(-sum_k mass_k (zeta_k + z)/(zeta_k - z)).
/// accumulation_angles records boundary limit points of a zero sequence
/// that has been truncated to `zeros`.
struct InnerFunctionData {
  double rotation = 0.0;
  int vanishing_order = 0;
  std::vector<cplx> zeros;
  std::vector<Atom> atoms;
  std::vector<double> accumulation_angles;

  /// Throws ParameterError on |a_n| >= 1, a_n = 0, mass <= 0 or N < 0.
  void validate() const;

  friend bool operator==(const InnerFunctionData&, const InnerFunctionData&) = default;
};

/// Zeros (1 - c q^n) e^{i angle} for n = 1..count.
std::vector<cplx> geometric_zero_sequence(double angle, double c, double q, int count);

/// sigma(phi) for finite data: the zeros plus boundary points (atoms and
/// declared accumulation points), angles sorted in [0, 2 pi).
struct SpectrumSet {
  std::vector<double> boundary_angles;
  std::vector<cplx> zeros;
};
SpectrumSet spectrum(const InnerFunctionData& d);

class FunctionSpec;

namespace spec {
struct Series {
  PowerSeries coeffs;
  // false marks a truncation of an infinite series; those have no boundary values.
  bool polynomial = true;
};
struct MonomialPower {
  int n = 0;
};
struct Inner {
  InnerFunctionData data;
};
struct Automorphism {
  cplx a;
};
/// (1 - z)^(-beta).
struct FracPower {
  double beta = 0.0;
};
struct Affine {
  cplx add;
  cplx scale;
  std::shared_ptr<const FunctionSpec> inner;
};
struct Product {
  std::vector<FunctionSpec> parts;
};
/// parts[0] o parts[1] o ... o parts.back().
struct Composition {
  std::vector<FunctionSpec> parts;
};
/// exp(-(1 + z)/(1 - z)).
struct ExpOfMoebius {};
/// 1 - sqrt(1 - z).
struct IceCream {};
}  // namespace spec

/// Closed-form or series description of an analytic function on the disc.
/// Immutable value type.
class FunctionSpec {
 public:
  using Node = std::variant<spec::Series, spec::MonomialPower, spec::Inner,
                            spec::Automorphism, spec::FracPower, spec::Affine,
                            spec::Product, spec::Composition, spec::ExpOfMoebius,
                            spec::IceCream>;

  explicit FunctionSpec(Node node);

  static FunctionSpec polynomial(PowerSeries coeffs);
  static FunctionSpec truncated_series(PowerSeries coeffs);
  static FunctionSpec constant(cplx value);
  static FunctionSpec identity() { return monomial(1); }
  static FunctionSpec monomial(int n);
  static FunctionSpec inner(InnerFunctionData data);
  static FunctionSpec automorphism(cplx a);
  static FunctionSpec frac_power(double beta);
  static FunctionSpec affine(cplx add, cplx scale, FunctionSpec inner);
  static FunctionSpec product(std::vector<FunctionSpec> parts);
  static FunctionSpec composition(std::vector<FunctionSpec> parts);
  static FunctionSpec exp_of_moebius();
  static FunctionSpec icecream();

  const Node& node() const { return node_; }
  template <class T>
  const T* as() const { return std::get_if<T>(&node_); }

  /// Tag used by the JSON schema ("series", "blaschke", ...).
  std::string type_name() const;

  friend bool operator==(const FunctionSpec& a, const FunctionSpec& b);

 private:
  Node node_;
};

/// f(z) for |z| <= 1. Throws DomainError for |z| > 1 and UnsupportedOperation
/// for boundary points of a truncated series. Boundary values are radial
/// limits; at an atom of a singular factor that limit is 0.
cplx eval(const FunctionSpec& f, cplx z);

/// f'(z) by exact differentiation rules, composed by chain and product rules.
cplx derivative_eval(const FunctionSpec& f, cplx z);

/// Whether eval accepts points of the unit circle.
bool has_boundary_values(const FunctionSpec& f);

/// Taylor coefficients a_0..a_N. Closed forms with known recurrences are
/// exact; compositions whose inner map does not fix 0 fall back to sampling
/// at the default radius.
PowerSeries taylor_coefficients(const FunctionSpec& f, int order);

/// Sampled path at an explicit radius (0 < radius < 1).
PowerSeries taylor_coefficients(const FunctionSpec& f, int order, double radius);

/// Canonical product formula; requires |z| < 1.
cplx inner_eval(const InnerFunctionData& d, cplx z);

/// Inner-function data when the spec is structurally inner (monomials,
/// automorphisms, blaschke/singular data, exp_of_moebius, unimodular
/// rotations and products of those).
std::optional<InnerFunctionData> inner_data(const FunctionSpec& f);

/// True for finite Blaschke products (no singular factor, finite zeros).
bool is_finite_blaschke(const FunctionSpec& f);

/// Boundary angles where f or its factors are singular or sharply peaked.
/// Used to place quadrature breakpoints; may over-report.
std::vector<double> singular_angles(const FunctionSpec& f);

struct ModulusCheck {
  double max_modulus = 0.0;
  double max_deviation = 0.0;  // max ||f| - 1| over the retained samples
  std::size_t samples = 0;
  std::size_t skipped = 0;
  double radius = 1.0;
  bool passed = false;
};

/// |phi| <= 1 on `samples` equispaced boundary points (radius 1 - 1e-8 when
/// phi has no boundary values).
ModulusCheck self_map_gate(const FunctionSpec& phi, std::size_t samples = 4096);

/// Throws PreconditionError, quoting the max |phi| found, when the gate fails.
void require_self_map(const FunctionSpec& phi, std::size_t samples = 4096);

/// ||phi| - 1| <= tolerance on boundary samples, skipping samples within
/// arc distance `exclusion` of singular angles.
ModulusCheck inner_gate(const FunctionSpec& phi, std::size_t samples = 4096,
                        double tolerance = 1e-6, double exclusion = 1e-3);

}  // namespace wcop
