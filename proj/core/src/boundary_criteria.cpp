#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "numeric_util.hpp"
#include "wcop/criteria.hpp"
#include "wcop/errors.hpp"

namespace wcop {
namespace {

using ojson = nlohmann::ordered_json;

// Zeros closer than this to the circle count as reaching it.
constexpr double kBoundaryReach = 1e-3;

}  // namespace

ojson BoundaryProbe::to_json() const {
  ojson o;
  o["angle"] = angle;
  o["radii"] = radii;
  o["quotients"] = quotients;
  o["derivative_moduli"] = derivative_moduli;
  o["cauchy_gap"] = cauchy_gap;
  o["limit"] = limit ? ojson(*limit) : ojson(nullptr);
  o["verdict"] = divergent ? "DIVERGENT" : (limit ? "CONVERGED" : "INCONCLUSIVE");
  return o;
}

BoundaryProbe jc_quotient_probe(const FunctionSpec& phi, double angle, const Thresholds& t,
                                int steps) {
  if (steps < 2 || steps > 12) throw ParameterError("probe steps must lie in [2, 12]");
  if (!std::isfinite(angle)) throw ParameterError("probe angle must be finite");
  BoundaryProbe p;
  p.angle = angle;
  const cplx zeta = std::polar(1.0, angle);
  bool have_derivative = true;
  for (int i = 1; i <= steps; ++i) {
    const double gap = std::pow(10.0, -i);
    const double r = 1.0 - gap;
    p.radii.push_back(r);
    const cplx w = r * zeta;
    p.quotients.push_back((1.0 - std::abs(eval(phi, w))) / gap);
    if (have_derivative) {
      try {
        p.derivative_moduli.push_back(std::abs(derivative_eval(phi, w)));
      } catch (const UnsupportedOperation&) {
        have_derivative = false;
        p.derivative_moduli.clear();
      }
    }
  }
  const double q1 = p.quotients[steps - 2];
  const double q2 = p.quotients[steps - 1];
  const double diff = std::abs(q2 - q1);
  p.cauchy_gap = diff == 0.0 ? 0.0 : diff / std::abs(q2);
  if (std::isfinite(p.cauchy_gap) && p.cauchy_gap < t.jc_cauchy_gap) {
    // error is O(1 - r) and the radii step by 10
    p.limit = q2 + (q2 - q1) / 9.0;
  } else {
    p.divergent = true;
  }
  return p;
}

ojson AhernClarkResult::to_json() const {
  ojson o;
  o["classification"] = wcop::to_string(classification);
  o["value"] = value;
  o["zero_part"] = zero_part;
  o["atom_part"] = atom_part;
  o["vanishing_part"] = vanishing_part;
  o["upper_bound"] = upper_bound ? ojson(*upper_bound) : ojson(nullptr);
  o["reason"] = reason;
  return o;
}

AhernClarkResult ahern_clark_sum(const InnerFunctionData& d, double angle,
                                 std::optional<double> tail_bound, const Thresholds& t) {
  d.validate();
  if (!std::isfinite(angle)) throw DomainError("boundary point must be finite");
  if (tail_bound && !(*tail_bound >= 0.0)) throw ParameterError("tail bound must be >= 0");
  const cplx zeta = std::polar(1.0, angle);
  AhernClarkResult out;

  for (const auto& a : d.atoms) {
    if (detail::arc_distance(a.angle, angle) < 1e-14) {
      out.classification = Verdict::Infinite;
      out.reason = "atom at the probe point";
      return out;
    }
  }

  // Canonical order so the sum and the growth test ignore input order.
  std::vector<cplx> zeros = d.zeros;
  std::sort(zeros.begin(), zeros.end(), [](cplx x, cplx y) {
    return std::make_tuple(std::abs(x), x.real(), x.imag()) <
           std::make_tuple(std::abs(y), y.real(), y.imag());
  });
  std::vector<double> terms;
  terms.reserve(zeros.size());
  for (cplx a : zeros) {
    const double m = std::abs(a);
    terms.push_back((1.0 - m) * (1.0 + m) / std::norm(zeta - a));
  }
  std::vector<double> atom_terms;
  std::vector<Atom> atoms = d.atoms;
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) {
    return std::tie(x.angle, x.mass) < std::tie(y.angle, y.mass);
  });
  for (const auto& a : atoms) atom_terms.push_back(2.0 * a.mass / std::norm(std::polar(1.0, a.angle) - zeta));

  out.zero_part = detail::pairwise_sum<double>(terms);
  out.atom_part = detail::pairwise_sum<double>(atom_terms);
  out.vanishing_part = d.vanishing_order;
  out.value = out.zero_part + out.atom_part + out.vanishing_part;

  if (tail_bound) {
    if (std::isinf(*tail_bound)) {
      out.classification = Verdict::Infinite;
      out.reason = "tail bound is infinite";
      return out;
    }
    out.upper_bound = out.value + *tail_bound;
  }
  if (!std::isfinite(out.value)) {
    out.classification = Verdict::Infinite;
    out.reason = "zero at the probe point";
    return out;
  }
  const std::size_t n = terms.size();
  if (n >= 3) {
    const bool rising = terms[n - 3] < terms[n - 2] && terms[n - 2] < terms[n - 1];
    const bool reaches = 1.0 - std::abs(zeros.back()) < kBoundaryReach;
    if (rising && reaches && terms[n - 1] >= t.growth_factor * terms[n - 3]) {
      out.classification = Verdict::Infinite;
      out.reason = "zero terms grow while the zeros approach the circle";
      return out;
    }
  }
  out.classification = Verdict::Finite;
  return out;
}

AhernClarkResult ahern_clark_sum(const InnerFunctionData& d, cplx zeta,
                                 std::optional<double> tail_bound, const Thresholds& t) {
  if (!(std::abs(std::abs(zeta) - 1.0) <= 1e-12))
    throw DomainError("Ahern-Clark point must satisfy |zeta| = 1");
  return ahern_clark_sum(d, std::arg(zeta), tail_bound, t);
}

}  // namespace wcop
