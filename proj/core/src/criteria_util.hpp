#pragma once

#include <nlohmann/json.hpp>

#include "kernel_norm.hpp"
#include "wcop/criteria.hpp"

namespace wcop::detail {

inline nlohmann::ordered_json grid_json(const DiskGrid& g) {
  nlohmann::ordered_json o;
  o["first_level"] = g.first_level();
  o["last_level"] = g.last_level();
  o["rays"] = g.rays();
  return o;
}

inline nlohmann::ordered_json space_json(const SpaceSpec& s) {
  nlohmann::ordered_json o;
  o["kind"] = s.name();
  if (!s.is_hardy()) o["alpha"] = s.alpha;
  return o;
}

inline KernelNormOptions kernel_options(const ProbeOptions& opt) {
  KernelNormOptions k;
  k.order = opt.order;
  k.rel_tol = opt.thresholds.boundary_rel_tol;
  k.tail_tolerance = opt.thresholds.tail_tolerance;
  k.force_coefficients = opt.force_coefficients;
  return k;
}

}  // namespace wcop::detail
