#include <algorithm>
#include <cmath>
#include <functional>

#include "criteria_util.hpp"
#include "numeric_util.hpp"
#include "wcop/criteria.hpp"
#include "wcop/errors.hpp"

namespace wcop {
namespace {

using ojson = nlohmann::ordered_json;

constexpr double kCircleRadius = 1.0 - 1e-8;

// Pushforward sample: phi(z) with mass |h(z)|^2 times the quadrature weight.
struct Weighted {
  cplx image;
  double mass;
};

std::vector<Weighted> hardy_samples(const FunctionSpec& h, const FunctionSpec& phi,
                                    std::size_t m) {
  std::vector<Weighted> s(m);
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    const cplx z = std::polar(kCircleRadius, detail::kTwoPi * static_cast<double>(k) * inv);
    s[k] = {eval(phi, z), std::norm(eval(h, z)) * inv};
  }
  return s;
}

std::vector<Weighted> bergman_samples(const FunctionSpec& h, const FunctionSpec& phi,
                                      double alpha, const CarlesonOptions& opt) {
  std::vector<Weighted> s;
  const double dtheta = detail::kTwoPi / opt.bergman_angles;
  for (int j = 1; j <= opt.bergman_annuli; ++j) {
    const double lo = j == 1 ? 0.0 : DiskGrid::radius(j - 1);
    const auto rule = gauss_legendre(opt.bergman_radial_nodes, lo, DiskGrid::radius(j));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = rule.nodes[i];
      const double wr = rule.weights[i] * r * std::pow((1.0 - r) * (1.0 + r), alpha) * dtheta /
                        std::numbers::pi;
      for (int k = 0; k < opt.bergman_angles; ++k) {
        const cplx z = std::polar(r, dtheta * k);
        s.push_back({eval(phi, z), std::norm(eval(h, z)) * wr});
      }
    }
  }
  return s;
}

}  // namespace

CriterionReport carleson_box_measure(const FunctionSpec& h, const FunctionSpec& phi,
                                     const SpaceSpec& space, double angle,
                                     const CarlesonOptions& opt, const Thresholds& thresholds) {
  if (opt.deltas.empty()) throw ParameterError("need at least one box size");
  for (double d : opt.deltas)
    if (!(d > 0.0 && d <= 2.0)) throw ParameterError("box size delta must lie in (0, 2]");
  if (!std::isfinite(angle)) throw ParameterError("box centre angle must be finite");
  if (space.is_hardy() && opt.samples < 64) throw ParameterError("need at least 64 samples");
  if (!space.is_hardy() &&
      (opt.bergman_annuli < 1 || opt.bergman_annuli > 30 || opt.bergman_radial_nodes < 1 ||
       opt.bergman_angles < 4))
    throw ParameterError("invalid Bergman area grid");
  require_self_map(phi);

  const auto samples = space.is_hardy() ? hardy_samples(h, phi, opt.samples)
                                        : bergman_samples(h, phi, space.alpha, opt);
  std::vector<double> deltas = opt.deltas;
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());

  const cplx zeta = std::polar(1.0, angle);
  const double expo = space.is_hardy() ? 1.0 : 2.0 + space.alpha;
  CriterionReport r;
  r.id = "carleson_box_measure";
  r.thresholds = thresholds;
  ojson boxes = ojson::array();
  std::vector<double> masses(samples.size());
  int nonfinite = 0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double d = deltas[i];
    nonfinite = 0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const bool inside = std::abs(samples[k].image - zeta) < d;
      double m = inside ? samples[k].mass : 0.0;
      if (!std::isfinite(m)) {
        ++nonfinite;
        m = 0.0;
      }
      masses[k] = m;
    }
    const double mu = detail::pairwise_sum<double>(masses);
    const double ratio = mu / std::pow(d, expo);
    record_sample(r, static_cast<int>(i) + 1, d, zeta, ratio);
    ojson b;
    b["delta"] = d;
    b["measure"] = mu;
    b["ratio"] = ratio;
    boxes.push_back(std::move(b));
  }
  r.verdict = growth_verdict(r.level_maxima(), thresholds);
  r.details["space"] = detail::space_json(space);
  r.details["angle"] = angle;
  r.details["ratio_exponent"] = expo;
  if (space.is_hardy()) {
    r.details["samples"] = opt.samples;
    r.details["radius"] = kCircleRadius;
  } else {
    ojson g;
    g["annuli"] = opt.bergman_annuli;
    g["radial_nodes"] = opt.bergman_radial_nodes;
    g["angles"] = opt.bergman_angles;
    r.details["area_grid"] = std::move(g);
  }
  r.details["boxes"] = std::move(boxes);
  r.notes.push_back("levels index box sizes by decreasing delta; level radius holds delta");
  if (nonfinite > 0)
    r.notes.push_back(std::to_string(nonfinite) + " samples with non-finite weight dropped");
  return r;
}

std::vector<BoxMeasure> box_measures(const CriterionReport& c) {
  std::vector<BoxMeasure> out;
  if (!c.details.contains("boxes")) return out;
  for (const auto& b : c.details["boxes"])
    out.push_back({b.at("delta").get<double>(), b.at("measure").get<double>(),
                   b.at("ratio").get<double>()});
  return out;
}

}  // namespace wcop
