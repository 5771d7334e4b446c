#include "wcop/functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "numeric_util.hpp"
#include "wcop/errors.hpp"
#include "wcop/fft.hpp"

namespace wcop {
namespace {

using detail::kTwoPi;

// Roundoff slack for points that land on the circle, e.g. inner values.
constexpr double kDiscSlack = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_disc(cplx z) {
  if (!detail::finite(z) || std::abs(z) > 1.0 + kDiscSlack) {
    std::ostringstream os;
    os << "point " << z << " lies outside the closed unit disc";
    throw DomainError(os.str());
  }
}

cplx blaschke_factor(cplx a, cplx z) {
  return (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
}

cplx blaschke_factor_derivative(cplx a, cplx z) {
  const cplx d = 1.0 - std::conj(a) * z;
  return (std::abs(a) / a) * (std::norm(a) - 1.0) / (d * d);
}

// Value of the inner function, accepting boundary points. Atoms hit
// exactly give the radial limit 0.
cplx inner_value(const InnerFunctionData& d, cplx z) {
  cplx v = std::polar(1.0, d.rotation);
  for (int k = 0; k < d.vanishing_order; ++k) v *= z;
  for (auto a : d.zeros) v *= blaschke_factor(a, z);
  cplx s{};
  for (const auto& at : d.atoms) {
    const cplx zeta = std::polar(1.0, at.angle);
    if (std::abs(zeta - z) < 1e-15) return 0.0;
    s += at.mass * (zeta + z) / (zeta - z);
  }
  return v * std::exp(-s);
}

cplx inner_derivative(const InnerFunctionData& d, cplx z) {
  const std::size_t m = d.zeros.size();
  // prefix[j] = b_0 ... b_{j-1}, suffix[j] = b_j ... b_{m-1}
  std::vector<cplx> prefix(m + 1, 1.0), suffix(m + 1, 1.0);
  for (std::size_t j = 0; j < m; ++j) prefix[j + 1] = prefix[j] * blaschke_factor(d.zeros[j], z);
  for (std::size_t j = m; j-- > 0;) suffix[j] = suffix[j + 1] * blaschke_factor(d.zeros[j], z);
  const cplx b = prefix[m];
  cplx db{};
  for (std::size_t j = 0; j < m; ++j)
    db += prefix[j] * blaschke_factor_derivative(d.zeros[j], z) * suffix[j + 1];

  cplx s{}, ds{};
  for (const auto& at : d.atoms) {
    const cplx zeta = std::polar(1.0, at.angle);
    if (std::abs(zeta - z) < 1e-15) return 0.0;
    s += at.mass * (zeta + z) / (zeta - z);
    ds += at.mass * 2.0 * zeta / ((zeta - z) * (zeta - z));
  }
  const cplx sing = std::exp(-s);
  const cplx dsing = -ds * sing;

  const int n = d.vanishing_order;
  cplx zn = 1.0, zn1 = 0.0;  // z^n and n z^{n-1}
  for (int k = 0; k < n; ++k) {
    zn1 = zn1 * z + zn;
    zn *= z;
  }
  return std::polar(1.0, d.rotation) * (zn1 * b * sing + zn * (db * sing + b * dsing));
}

// Coefficients of exp(-mass (zeta + z)/(zeta - z)) = e^{-mass} sum L_n^{(-1)}(2 mass) (conj(zeta) z)^n.
PowerSeries atom_series(const Atom& at, int order) {
  const double x = 2.0 * at.mass;
  const cplx rot = std::polar(1.0, -at.angle);
  std::vector<cplx> c(order + 1);
  double lm1 = 1.0;  // L_0
  double l = -x;     // L_1 for alpha = -1
  c[0] = 1.0;
  cplx r = rot;
  for (int n = 1; n <= order; ++n) {
    c[n] = l * r;
    r *= rot;
    // (n+1) L_{n+1} = (2n - x) L_n - (n - 1) L_{n-1}
    const double next = ((2.0 * n - x) * l - (n - 1.0) * lm1) / (n + 1.0);
    lm1 = l;
    l = next;
  }
  const double scale = std::exp(-at.mass);
  for (auto& v : c) v *= scale;
  return PowerSeries(std::move(c));
}

PowerSeries automorphism_series(cplx a, int order) {
  std::vector<cplx> c(order + 1);
  c[0] = a;
  cplx p = 1.0;
  const double m = std::norm(a) - 1.0;
  for (int n = 1; n <= order; ++n) {
    c[n] = p * m;
    p *= std::conj(a);
  }
  return PowerSeries(std::move(c));
}

PowerSeries inner_series(const InnerFunctionData& d, int order) {
  auto s = PowerSeries::monomial(d.vanishing_order, order, std::polar(1.0, d.rotation));
  for (auto a : d.zeros)
    s = multiply(s, (std::abs(a) / a) * automorphism_series(a, order));
  for (const auto& at : d.atoms) s = multiply(s, atom_series(at, order));
  return s;
}

void merge_inner(InnerFunctionData& into, const InnerFunctionData& d) {
  into.rotation += d.rotation;
  into.vanishing_order += d.vanishing_order;
  into.zeros.insert(into.zeros.end(), d.zeros.begin(), d.zeros.end());
  into.atoms.insert(into.atoms.end(), d.atoms.begin(), d.atoms.end());
  into.accumulation_angles.insert(into.accumulation_angles.end(),
                                  d.accumulation_angles.begin(),
                                  d.accumulation_angles.end());
}

void collect_angles(const FunctionSpec& f, std::vector<double>& out) {
  std::visit(
      overloaded{
          [&](const spec::Series&) {},
          [&](const spec::MonomialPower&) {},
          [&](const spec::Inner& s) {
            for (const auto& at : s.data.atoms) out.push_back(at.angle);
            for (double a : s.data.accumulation_angles) out.push_back(a);
            for (auto a : s.data.zeros)
              if (std::abs(a) > 0.9) out.push_back(std::arg(a));
          },
          [&](const spec::Automorphism& s) {
            if (std::abs(s.a) > 0.9) out.push_back(std::arg(s.a));
          },
          [&](const spec::FracPower& s) {
            if (!(s.beta <= 0.0 && std::floor(s.beta) == s.beta)) out.push_back(0.0);
          },
          [&](const spec::Affine& s) { collect_angles(*s.inner, out); },
          [&](const spec::Product& s) {
            for (const auto& p : s.parts) collect_angles(p, out);
          },
          [&](const spec::Composition& s) {
            for (const auto& p : s.parts) collect_angles(p, out);
          },
          [&](const spec::ExpOfMoebius&) { out.push_back(0.0); },
          [&](const spec::IceCream&) { out.push_back(0.0); },
      },
      f.node());
}

// (1 + z) / (1 - z) with the real part (1 - |z|^2) / |1 - z|^2 taken exactly,
// so points on the circle map to the imaginary axis
cplx herglotz(cplx z) {
  double d = 1.0 - std::norm(z);
  if (std::abs(d) < 8.0 * std::numeric_limits<double>::epsilon()) d = 0.0;
  const double q = std::norm(1.0 - z);
  return {d / q, 2.0 * z.imag() / q};
}

std::vector<cplx> boundary_values(const FunctionSpec& f, std::size_t samples,
                                  double& radius) {
  radius = has_boundary_values(f) ? 1.0 : 1.0 - 1e-8;
  std::vector<cplx> v(samples);
  const double step = kTwoPi / static_cast<double>(samples);
  for (std::size_t k = 0; k < samples; ++k)
    v[k] = eval(f, std::polar(radius, step * static_cast<double>(k)));
  return v;
}

}  // namespace

void InnerFunctionData::validate() const {
  if (vanishing_order < 0) throw ParameterError("vanishing order must be >= 0");
  if (!std::isfinite(rotation)) throw ParameterError("rotation must be finite");
  for (auto a : zeros) {
    if (!detail::finite(a) || std::abs(a) >= 1.0) {
      std::ostringstream os;
      os << "zero " << a << " has |a| >= 1";
      throw ParameterError(os.str());
    }
    if (a == cplx{}) throw ParameterError("zeros at the origin belong in vanishing_order");
  }
  for (const auto& at : atoms) {
    if (!std::isfinite(at.angle)) throw ParameterError("atom angle must be finite");
    if (!(at.mass > 0.0) || !std::isfinite(at.mass))
      throw ParameterError("atom mass must be positive, got " + std::to_string(at.mass));
  }
  for (double a : accumulation_angles)
    if (!std::isfinite(a)) throw ParameterError("accumulation angle must be finite");
}

std::vector<cplx> geometric_zero_sequence(double angle, double c, double q, int count) {
  if (!(c > 0.0) || !(q > 0.0 && q < 1.0) || count < 0)
    throw ParameterError("geometric zero sequence needs c > 0, 0 < q < 1");
  std::vector<cplx> z;
  z.reserve(count);
  double qn = q;
  for (int n = 1; n <= count; ++n, qn *= q) {
    const double r = 1.0 - c * qn;
    if (!(r > 0.0 && r < 1.0)) throw ParameterError("zero modulus 1 - c q^n leaves (0, 1)");
    z.push_back(std::polar(r, angle));
  }
  return z;
}

SpectrumSet spectrum(const InnerFunctionData& d) {
  SpectrumSet s;
  for (const auto& at : d.atoms) s.boundary_angles.push_back(detail::wrap_angle(at.angle));
  for (double a : d.accumulation_angles) s.boundary_angles.push_back(detail::wrap_angle(a));
  std::sort(s.boundary_angles.begin(), s.boundary_angles.end());
  s.boundary_angles.erase(std::unique(s.boundary_angles.begin(), s.boundary_angles.end()),
                          s.boundary_angles.end());
  s.zeros = d.zeros;
  return s;
}

FunctionSpec::FunctionSpec(Node node) : node_(std::move(node)) {}

FunctionSpec FunctionSpec::polynomial(PowerSeries coeffs) {
  return FunctionSpec(spec::Series{std::move(coeffs), true});
}

FunctionSpec FunctionSpec::truncated_series(PowerSeries coeffs) {
  return FunctionSpec(spec::Series{std::move(coeffs), false});
}

FunctionSpec FunctionSpec::constant(cplx value) {
  return polynomial(PowerSeries({value}));
}

FunctionSpec FunctionSpec::monomial(int n) {
  if (n < 0) throw ParameterError("monomial power must be >= 0");
  return FunctionSpec(spec::MonomialPower{n});
}

FunctionSpec FunctionSpec::inner(InnerFunctionData data) {
  data.validate();
  return FunctionSpec(spec::Inner{std::move(data)});
}

FunctionSpec FunctionSpec::automorphism(cplx a) {
  if (!detail::finite(a) || std::abs(a) >= 1.0)
    throw ParameterError("automorphism parameter needs |a| < 1");
  return FunctionSpec(spec::Automorphism{a});
}

FunctionSpec FunctionSpec::frac_power(double beta) {
  if (!std::isfinite(beta)) throw ParameterError("frac_power beta must be finite");
  return FunctionSpec(spec::FracPower{beta});
}

FunctionSpec FunctionSpec::affine(cplx add, cplx scale, FunctionSpec inner) {
  if (!detail::finite(add) || !detail::finite(scale))
    throw ParameterError("affine coefficients must be finite");
  return FunctionSpec(
      spec::Affine{add, scale, std::make_shared<const FunctionSpec>(std::move(inner))});
}

FunctionSpec FunctionSpec::product(std::vector<FunctionSpec> parts) {
  if (parts.empty()) throw ParameterError("product needs at least one part");
  return FunctionSpec(spec::Product{std::move(parts)});
}

FunctionSpec FunctionSpec::composition(std::vector<FunctionSpec> parts) {
  if (parts.empty()) throw ParameterError("composition needs at least one part");
  return FunctionSpec(spec::Composition{std::move(parts)});
}

FunctionSpec FunctionSpec::exp_of_moebius() { return FunctionSpec(spec::ExpOfMoebius{}); }
FunctionSpec FunctionSpec::icecream() { return FunctionSpec(spec::IceCream{}); }

std::string FunctionSpec::type_name() const {
  return std::visit(overloaded{
                        [](const spec::Series&) { return "series"; },
                        [](const spec::MonomialPower&) { return "monomial_power"; },
                        [](const spec::Inner&) { return "blaschke"; },
                        [](const spec::Automorphism&) { return "automorphism"; },
                        [](const spec::FracPower&) { return "frac_power"; },
                        [](const spec::Affine&) { return "affine"; },
                        [](const spec::Product&) { return "product"; },
                        [](const spec::Composition&) { return "composition"; },
                        [](const spec::ExpOfMoebius&) { return "exp_of_moebius"; },
                        [](const spec::IceCream&) { return "icecream"; },
                    },
                    node_);
}

bool operator==(const FunctionSpec& a, const FunctionSpec& b) {
  if (a.node_.index() != b.node_.index()) return false;
  return std::visit(
      overloaded{
          [&](const spec::Series& x) {
            const auto& y = *b.as<spec::Series>();
            return x.polynomial == y.polynomial && x.coeffs == y.coeffs;
          },
          [&](const spec::MonomialPower& x) { return x.n == b.as<spec::MonomialPower>()->n; },
          [&](const spec::Inner& x) { return x.data == b.as<spec::Inner>()->data; },
          [&](const spec::Automorphism& x) { return x.a == b.as<spec::Automorphism>()->a; },
          [&](const spec::FracPower& x) { return x.beta == b.as<spec::FracPower>()->beta; },
          [&](const spec::Affine& x) {
            const auto& y = *b.as<spec::Affine>();
            return x.add == y.add && x.scale == y.scale && *x.inner == *y.inner;
          },
          [&](const spec::Product& x) { return x.parts == b.as<spec::Product>()->parts; },
          [&](const spec::Composition& x) {
            return x.parts == b.as<spec::Composition>()->parts;
          },
          [](const spec::ExpOfMoebius&) { return true; },
          [](const spec::IceCream&) { return true; },
      },
      a.node_);
}

cplx inner_eval(const InnerFunctionData& d, cplx z) {
  if (!detail::finite(z) || std::abs(z) >= 1.0)
    throw DomainError("inner_eval needs |z| < 1; use boundary sampling instead");
  return inner_value(d, z);
}

cplx eval(const FunctionSpec& f, cplx z) {
  check_disc(z);
  return std::visit(
      overloaded{
          [&](const spec::Series& s) -> cplx {
            if (!s.polynomial && std::abs(z) >= 1.0)
              throw UnsupportedOperation("boundary value of a truncated series is undefined");
            return s.coeffs.eval(z);
          },
          [&](const spec::MonomialPower& s) -> cplx { return std::pow(z, s.n); },
          [&](const spec::Inner& s) -> cplx { return inner_value(s.data, z); },
          [&](const spec::Automorphism& s) -> cplx {
            return (s.a - z) / (1.0 - std::conj(s.a) * z);
          },
          [&](const spec::FracPower& s) -> cplx {
            const cplx w = 1.0 - z;
            if (w == cplx{}) {
              if (s.beta > 0.0) return kInf;
              return s.beta == 0.0 ? 1.0 : 0.0;
            }
            return std::pow(w, -s.beta);
          },
          [&](const spec::Affine& s) -> cplx { return s.add + s.scale * eval(*s.inner, z); },
          [&](const spec::Product& s) -> cplx {
            cplx v = 1.0;
            for (const auto& p : s.parts) v *= eval(p, z);
            return v;
          },
          [&](const spec::Composition& s) -> cplx {
            cplx v = z;
            for (auto it = s.parts.rbegin(); it != s.parts.rend(); ++it) v = eval(*it, v);
            return v;
          },
          [&](const spec::ExpOfMoebius&) -> cplx {
            const cplx w = 1.0 - z;
            if (w == cplx{}) return 0.0;
            return std::exp(-herglotz(z));
          },
          [&](const spec::IceCream&) -> cplx { return 1.0 - std::sqrt(1.0 - z); },
      },
      f.node());
}

cplx derivative_eval(const FunctionSpec& f, cplx z) {
  check_disc(z);
  return std::visit(
      overloaded{
          [&](const spec::Series& s) -> cplx {
            if (!s.polynomial && std::abs(z) >= 1.0)
              throw UnsupportedOperation("boundary derivative of a truncated series is undefined");
            return s.coeffs.derivative_eval(z);
          },
          [&](const spec::MonomialPower& s) -> cplx {
            return s.n == 0 ? cplx{} : static_cast<double>(s.n) * std::pow(z, s.n - 1);
          },
          [&](const spec::Inner& s) -> cplx { return inner_derivative(s.data, z); },
          [&](const spec::Automorphism& s) -> cplx {
            const cplx d = 1.0 - std::conj(s.a) * z;
            return (std::norm(s.a) - 1.0) / (d * d);
          },
          [&](const spec::FracPower& s) -> cplx {
            const cplx w = 1.0 - z;
            if (s.beta == 0.0) return 0.0;
            if (w == cplx{}) return s.beta > -1.0 ? cplx(kInf) : cplx(s.beta == -1.0 ? -1.0 : 0.0);
            return s.beta * std::pow(w, -s.beta - 1.0);
          },
          [&](const spec::Affine& s) -> cplx { return s.scale * derivative_eval(*s.inner, z); },
          [&](const spec::Product& s) -> cplx {
            const std::size_t m = s.parts.size();
            std::vector<cplx> v(m), prefix(m + 1, 1.0), suffix(m + 1, 1.0);
            for (std::size_t j = 0; j < m; ++j) v[j] = eval(s.parts[j], z);
            for (std::size_t j = 0; j < m; ++j) prefix[j + 1] = prefix[j] * v[j];
            for (std::size_t j = m; j-- > 0;) suffix[j] = suffix[j + 1] * v[j];
            cplx d{};
            for (std::size_t j = 0; j < m; ++j)
              d += prefix[j] * derivative_eval(s.parts[j], z) * suffix[j + 1];
            return d;
          },
          [&](const spec::Composition& s) -> cplx {
            cplx v = z, d = 1.0;
            for (auto it = s.parts.rbegin(); it != s.parts.rend(); ++it) {
              d *= derivative_eval(*it, v);
              v = eval(*it, v);
            }
            return d;
          },
          [&](const spec::ExpOfMoebius&) -> cplx {
            const cplx w = 1.0 - z;
            if (w == cplx{}) return 0.0;
            return -2.0 / (w * w) * std::exp(-herglotz(z));
          },
          [&](const spec::IceCream&) -> cplx {
            const cplx w = 1.0 - z;
            if (w == cplx{}) return kInf;
            return 0.5 / std::sqrt(w);
          },
      },
      f.node());
}

bool has_boundary_values(const FunctionSpec& f) {
  return std::visit(overloaded{
                        [](const spec::Series& s) { return s.polynomial; },
                        [](const spec::Affine& s) { return has_boundary_values(*s.inner); },
                        [](const spec::Product& s) {
                          return std::all_of(s.parts.begin(), s.parts.end(),
                                             [](const auto& p) { return has_boundary_values(p); });
                        },
                        [](const spec::Composition& s) {
                          return std::all_of(s.parts.begin(), s.parts.end(),
                                             [](const auto& p) { return has_boundary_values(p); });
                        },
                        [](const auto&) { return true; },
                    },
                    f.node());
}

PowerSeries taylor_coefficients(const FunctionSpec& f, int order) {
  if (order < 0) throw ParameterError("negative truncation order");
  return std::visit(
      overloaded{
          [&](const spec::Series& s) { return s.coeffs.resized(order); },
          [&](const spec::MonomialPower& s) { return PowerSeries::monomial(s.n, order); },
          [&](const spec::Inner& s) { return inner_series(s.data, order); },
          [&](const spec::Automorphism& s) { return automorphism_series(s.a, order); },
          [&](const spec::FracPower& s) { return binomial_series(s.beta, order); },
          [&](const spec::Affine& s) {
            return PowerSeries::constant(s.add, order) +
                   s.scale * taylor_coefficients(*s.inner, order);
          },
          [&](const spec::Product& s) {
            auto acc = taylor_coefficients(s.parts.front(), order);
            for (std::size_t j = 1; j < s.parts.size(); ++j)
              acc = multiply(acc, taylor_coefficients(s.parts[j], order));
            return acc;
          },
          [&](const spec::Composition& s) {
            auto acc = taylor_coefficients(s.parts.back(), order);
            for (std::size_t j = s.parts.size() - 1; j-- > 0;) {
              // A nonzero centre makes the formal composition inexact.
              if (std::abs(acc[0]) > 1e-14)
                return taylor_coefficients(f, order, default_sampling_radius(order));
              acc = compose(taylor_coefficients(s.parts[j], order), acc).series;
            }
            return acc;
          },
          [&](const spec::ExpOfMoebius&) {
            return atom_series(Atom{0.0, 1.0}, order);
          },
          [&](const spec::IceCream&) {
            auto c = binomial_series(-0.5, order);
            return PowerSeries::constant(1.0, order) - c;
          },
      },
      f.node());
}

PowerSeries taylor_coefficients(const FunctionSpec& f, int order, double radius) {
  if (!(radius > 0.0) || radius >= 1.0)
    throw SamplingError("sampling radius must lie in (0, 1), got " + std::to_string(radius));
  return sampled_taylor_coefficients([&](cplx z) { return eval(f, z); }, order, radius);
}

std::optional<InnerFunctionData> inner_data(const FunctionSpec& f) {
  using R = std::optional<InnerFunctionData>;
  return std::visit(
      overloaded{
          [](const spec::MonomialPower& s) -> R {
            InnerFunctionData d;
            d.vanishing_order = s.n;
            return d;
          },
          [](const spec::Inner& s) -> R { return s.data; },
          [](const spec::Automorphism& s) -> R {
            InnerFunctionData d;
            if (s.a == cplx{}) {
              d.rotation = std::numbers::pi;
              d.vanishing_order = 1;
            } else {
              d.rotation = std::arg(s.a);
              d.zeros = {s.a};
            }
            return d;
          },
          [](const spec::ExpOfMoebius&) -> R {
            InnerFunctionData d;
            d.atoms = {Atom{0.0, 1.0}};
            return d;
          },
          [](const spec::Affine& s) -> R {
            if (s.add != cplx{} || std::abs(std::abs(s.scale) - 1.0) > 1e-15) return std::nullopt;
            auto d = inner_data(*s.inner);
            if (d) d->rotation += std::arg(s.scale);
            return d;
          },
          [](const spec::Product& s) -> R {
            InnerFunctionData acc;
            for (const auto& p : s.parts) {
              auto d = inner_data(p);
              if (!d) return std::nullopt;
              merge_inner(acc, *d);
            }
            return acc;
          },
          [](const auto&) -> R { return std::nullopt; },
      },
      f.node());
}

bool is_finite_blaschke(const FunctionSpec& f) {
  if (const auto* c = f.as<spec::Composition>())
    return std::all_of(c->parts.begin(), c->parts.end(),
                       [](const auto& p) { return is_finite_blaschke(p); });
  const auto d = inner_data(f);
  return d && d->atoms.empty() && d->accumulation_angles.empty();
}

std::vector<double> singular_angles(const FunctionSpec& f) {
  std::vector<double> out;
  collect_angles(f, out);
  for (auto& a : out) a = detail::wrap_angle(a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ModulusCheck self_map_gate(const FunctionSpec& phi, std::size_t samples) {
  ModulusCheck c;
  c.samples = samples;
  const auto sing = singular_angles(phi);
  const auto v = boundary_values(phi, samples, c.radius);
  const double step = kTwoPi / static_cast<double>(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = step * static_cast<double>(k);
    // a sample landing exactly on a boundary singularity has no value to check
    if (!detail::finite(v[k]) && std::any_of(sing.begin(), sing.end(), [&](double s) {
          return detail::arc_distance(theta, s) < 0.5 * step;
        })) {
      ++c.skipped;
      continue;
    }
    const double m = detail::finite(v[k]) ? std::abs(v[k]) : kInf;
    c.max_modulus = std::max(c.max_modulus, m);
  }
  c.max_deviation = std::max(0.0, c.max_modulus - 1.0);
  c.passed = c.max_modulus <= 1.0 + kDiscSlack;
  return c;
}

void require_self_map(const FunctionSpec& phi, std::size_t samples) {
  const auto c = self_map_gate(phi, samples);
  if (!c.passed) {
    std::ostringstream os;
    os.precision(17);
    os << "symbol is not a self-map of the disc: max |phi| = " << c.max_modulus << " on "
       << c.samples << " boundary samples";
    throw PreconditionError(os.str());
  }
}

ModulusCheck inner_gate(const FunctionSpec& phi, std::size_t samples, double tolerance,
                        double exclusion) {
  ModulusCheck c;
  c.samples = samples;
  const auto sing = singular_angles(phi);
  const auto v = boundary_values(phi, samples, c.radius);
  const double step = kTwoPi / static_cast<double>(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = step * static_cast<double>(k);
    const bool near = std::any_of(sing.begin(), sing.end(), [&](double s) {
      return detail::arc_distance(theta, s) < exclusion;
    });
    if (near) {
      ++c.skipped;
      continue;
    }
    const double m = detail::finite(v[k]) ? std::abs(v[k]) : kInf;
    c.max_modulus = std::max(c.max_modulus, m);
    c.max_deviation = std::max(c.max_deviation, std::abs(m - 1.0));
  }
  c.passed = c.max_deviation <= tolerance && c.skipped < samples;
  return c;
}

}  // namespace wcop
