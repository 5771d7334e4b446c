#include <algorithm>
#include <cmath>
#include <limits>

#include "criteria_util.hpp"
#include "numeric_util.hpp"
#include "wcop/criteria.hpp"
#include "wcop/errors.hpp"
#include "wcop/operators.hpp"

namespace wcop {
namespace {

using ojson = nlohmann::ordered_json;
using detail::KernelNorm;

CriterionReport kernel_profile(const std::string& id, const FunctionSpec& h,
                               const FunctionSpec& phi, const SpaceSpec& space,
                               const DiskGrid& grid, const ProbeOptions& opt) {
  require_self_map(phi);
  KernelNorm kn(h, phi, space, KernelKind::Normalized, detail::kernel_options(opt));
  CriterionReport r;
  r.id = id;
  r.thresholds = opt.thresholds;
  for (int j = grid.first_level(); j <= grid.last_level(); ++j) {
    const double rad = DiskGrid::radius(j);
    for (cplx w : grid.points(j)) {
      const auto v = kn(w);
      if (!v.ok || !std::isfinite(v.value))
        record_exclusion(r, j, rad, w, v.ok ? "non-finite kernel norm" : v.reason);
      else
        record_sample(r, j, rad, w, v.value);
    }
  }
  r.details["space"] = detail::space_json(space);
  r.details["route"] = kn.route_name();
  if (!kn.boundary_route()) r.details["order"] = opt.order;
  r.details["grid"] = detail::grid_json(grid);
  r.details["level_maxima"] = r.level_maxima();
  if (!r.excluded.empty())
    r.notes.push_back(std::to_string(r.excluded.size()) + " grid points excluded");
  return r;
}

bool same_grid(const CriterionReport& k, const DiskGrid& grid, const SpaceSpec& space) {
  return k.details.contains("grid") && k.details["grid"] == detail::grid_json(grid) &&
         k.details.contains("space") && k.details["space"] == detail::space_json(space);
}

}  // namespace

CriterionReport kernel_test(const FunctionSpec& h, const FunctionSpec& phi, const SpaceSpec& space,
                            const DiskGrid& grid, const ProbeOptions& opt) {
  auto r = kernel_profile("kernel_test", h, phi, space, grid, opt);
  const auto m = r.level_maxima();
  r.verdict = growth_verdict(m, opt.thresholds);
  return r;
}

CriterionReport compactness_profile(const FunctionSpec& h, const FunctionSpec& phi,
                                    const SpaceSpec& space, const DiskGrid& grid,
                                    const ProbeOptions& opt, const CriterionReport* kernel) {
  if (kernel && kernel->verdict == Verdict::Unbounded && !kernel->skipped) {
    CriterionReport r;
    r.id = "compactness_profile";
    r.thresholds = opt.thresholds;
    r.skipped = "kernel_test returned UNBOUNDED-EVIDENCE";
    return r;
  }
  CriterionReport r;
  if (kernel && !kernel->skipped && same_grid(*kernel, grid, space) &&
      kernel->thresholds == opt.thresholds) {
    r = *kernel;
    r.id = "compactness_profile";
    r.notes.push_back("profile shared with kernel_test");
  } else {
    r = kernel_profile("compactness_profile", h, phi, space, grid, opt);
  }
  r.verdict = vanishing_verdict(r.level_maxima(), opt.thresholds);
  return r;
}

double jc_ratio(const FunctionSpec& phi, cplx w) {
  const double a = std::abs(eval(phi, w));
  const double r = std::abs(w);
  return (1.0 - a) * (1.0 + a) / ((1.0 - r) * (1.0 + r));
}

CriterionReport pointwise_bound_check(const FunctionSpec& h, const FunctionSpec& phi,
                                      double norm_bound, const DiskGrid& grid,
                                      const Thresholds& thresholds) {
  if (!(norm_bound >= 0.0)) throw ParameterError("norm bound must be >= 0");
  CriterionReport r;
  r.id = "pointwise_bound_check";
  r.thresholds = thresholds;
  double worst = std::numeric_limits<double>::infinity();
  cplx worst_at;
  int violations = 0;
  std::optional<int> first_violation;
  bool falsified = false;
  for (int j = grid.first_level(); j <= grid.last_level(); ++j) {
    const double rad = DiskGrid::radius(j);
    for (cplx w : grid.points(j)) {
      const double hw = std::abs(eval(h, w));
      const double q = jc_ratio(phi, w);
      if (!std::isfinite(hw) || !std::isfinite(q)) {
        record_exclusion(r, j, rad, w, "non-finite h(w) or phi(w)");
        continue;
      }
      if (q <= 0.0) {
        // phi(w) on the circle: only h(w) = 0 is compatible with a bounded W.
        record_exclusion(r, j, rad, w, "phi(w) on the unit circle");
        if (hw > 0.0) {
          falsified = true;
          ++violations;
          if (!first_violation) first_violation = j;
        }
        continue;
      }
      const double sq = std::sqrt(q);
      const double margin = norm_bound * sq - hw;
      if (margin < worst) {
        worst = margin;
        worst_at = w;
      }
      if (margin < 0.0) {
        falsified = true;
        ++violations;
        if (!first_violation || j < *first_violation) first_violation = j;
      }
      record_sample(r, j, rad, w, hw / sq);
    }
  }
  r.verdict = growth_verdict(r.level_maxima(), thresholds);
  r.details["norm_bound"] = norm_bound;
  r.details["falsified"] = falsified;
  r.details["violations"] = violations;
  r.details["first_violation_level"] = first_violation ? ojson(*first_violation) : ojson(nullptr);
  r.details["worst_margin"] = worst;
  r.details["worst_margin_at"] = ojson::array({worst_at.real(), worst_at.imag()});
  r.details["grid"] = detail::grid_json(grid);
  r.details["level_maxima"] = r.level_maxima();
  if (falsified)
    r.notes.push_back("claimed norm bound is violated: W cannot have norm <= " +
                      std::to_string(norm_bound));
  return r;
}

CriterionReport adelta_bound_check(const FunctionSpec& h, const FunctionSpec& phi,
                                   const AdeltaOptions& ad, const DiskGrid& grid,
                                   const ProbeOptions& opt) {
  if (!(ad.delta > 0.0 && ad.delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
  if (ad.c_delta && !(*ad.c_delta >= 0.0)) throw ParameterError("c_delta must be >= 0");
  if (ad.boundary_samples < 16) throw ParameterError("need at least 16 boundary samples");
  require_self_map(phi);
  const SpaceSpec space = SpaceSpec::hardy();

  // sup |h| over the sampled part of A_delta
  const bool on_circle = has_boundary_values(h) && has_boundary_values(phi);
  const double rho = on_circle ? 1.0 : 1.0 - 1e-8;
  const std::size_t m = ad.boundary_samples;
  double h_max = 0.0;
  std::size_t in_set = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const cplx z = std::polar(rho, detail::kTwoPi * static_cast<double>(k) / static_cast<double>(m));
    const double pv = std::abs(eval(phi, z));
    if (!(pv >= 1.0 - ad.delta)) continue;
    ++in_set;
    const double hv = std::abs(eval(h, z));
    h_max = std::isnan(hv) ? h_max : std::max(h_max, hv);
  }
  const bool empty = in_set == 0;
  const double c = empty ? 0.0 : ad.c_delta.value_or(h_max);
  const bool precondition_ok = empty || !ad.c_delta || h_max <= *ad.c_delta * (1.0 + 1e-12);

  double cnorm = 0.0;
  if (!empty) {
    if (ad.composition_norm) {
      cnorm = *ad.composition_norm;
    } else {
      const auto a = build_operator_matrix(FunctionSpec::constant(1.0), phi, space, opt.order);
      cnorm = operator_norm_estimate(a);
    }
  }

  KernelNorm kn(h, phi, space, KernelKind::Normalized, detail::kernel_options(opt));
  const auto h0 = kn(0.0);
  const double h_norm = h0.value;  // k_0 = 1, so this is ||h||_2

  CriterionReport r;
  r.id = "adelta_bound_check";
  r.thresholds = opt.thresholds;
  bool holds = true;
  int violations = 0;
  double kernel_sup = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  const double d2 = ad.delta * ad.delta;
  for (int j = grid.first_level(); j <= grid.last_level(); ++j) {
    const double rad = DiskGrid::radius(j);
    for (cplx w : grid.points(j)) {
      const auto v = kn(w);
      if (!v.ok || !std::isfinite(v.value)) {
        record_exclusion(r, j, rad, w, v.ok ? "non-finite kernel norm" : v.reason);
        continue;
      }
      const double one_minus = (1.0 - std::abs(w)) * (1.0 + std::abs(w));
      const double bound_sq = c * c * cnorm * cnorm + h_norm * h_norm * one_minus / d2;
      const double bound = std::sqrt(bound_sq);
      kernel_sup = std::max(kernel_sup, v.value);
      worst = std::min(worst, bound - v.value);
      // quadrature slack
      if (v.value * v.value > bound_sq * (1.0 + 1e-9)) {
        holds = false;
        ++violations;
      }
      record_sample(r, j, rad, w, bound);
    }
  }
  const double uniform = std::sqrt(c * c * cnorm * cnorm + h_norm * h_norm / d2);
  r.verdict = precondition_ok ? vanishing_verdict(r.level_maxima(), opt.thresholds)
                              : Verdict::Inconclusive;
  r.details["delta"] = ad.delta;
  r.details["adelta_samples"] = in_set;
  r.details["adelta_empty"] = empty;
  r.details["sampled_h_max"] = h_max;
  r.details["c_delta"] = c;
  r.details["precondition_ok"] = precondition_ok;
  r.details["composition_norm"] = cnorm;
  r.details["h_norm"] = h_norm;
  r.details["uniform_bound"] = uniform;
  r.details["kernel_sup"] = kernel_sup;
  r.details["holds"] = holds;
  r.details["violations"] = violations;
  r.details["worst_margin"] = worst;
  r.details["route"] = kn.route_name();
  r.details["grid"] = detail::grid_json(grid);
  r.details["level_maxima"] = r.level_maxima();
  if (!precondition_ok)
    r.notes.push_back("precondition violated: sampled |h| on A_delta is " +
                      std::to_string(h_max) + " > c_delta");
  if (!h0.ok) r.notes.push_back("||h|| not resolved: " + h0.reason);
  return r;
}

CriterionReport sup_jc_ratio(const FunctionSpec& phi, const DiskGrid& grid,
                             const Thresholds& thresholds) {
  require_self_map(phi);
  CriterionReport r;
  r.id = "sup_jc_ratio";
  r.thresholds = thresholds;
  for (int j = grid.first_level(); j <= grid.last_level(); ++j) {
    const double rad = DiskGrid::radius(j);
    for (cplx w : grid.points(j)) {
      const double q = jc_ratio(phi, w);
      if (!std::isfinite(q))
        record_exclusion(r, j, rad, w, "non-finite phi(w)");
      else
        record_sample(r, j, rad, w, q);
    }
  }
  const auto m = r.level_maxima();
  r.verdict = growth_verdict(m, thresholds);
  r.details["grid"] = detail::grid_json(grid);
  r.details["level_maxima"] = m;
  if (is_finite_blaschke(phi)) {
    constexpr int kSamples = 4096;
    double dmax = 0.0;
    for (int k = 0; k < kSamples; ++k)
      dmax = std::max(dmax, std::abs(derivative_eval(phi, std::polar(1.0, detail::kTwoPi * k / kSamples))));
    r.details["boundary_derivative_max"] = dmax;
    if (!m.empty()) r.details["relative_gap"] = std::abs(m.back() - dmax) / dmax;
  }
  return r;
}

CriterionReport adjoint_kernel_report(const TruncationMatrix& a, const FunctionSpec& h,
                                      const FunctionSpec& phi, const std::vector<cplx>& points,
                                      double tolerance) {
  CriterionReport r;
  r.id = "adjoint_kernel_check";
  double worst = 0.0;
  for (cplx w : points) {
    const double res = adjoint_kernel_check(a, h, phi, w);
    record_sample(r, 1, std::abs(w), w, res);
    worst = std::max(worst, res);
  }
  const bool passed = !points.empty() && worst <= tolerance;
  r.verdict = passed ? Verdict::Bounded : Verdict::Inconclusive;
  r.details["order"] = a.order();
  r.details["tolerance"] = tolerance;
  r.details["max_residual"] = worst;
  r.details["passed"] = passed;
  return r;
}

}  // namespace wcop
