#include "wcop/grid.hpp"

#include <algorithm>
#include <cmath>

#include "numeric_util.hpp"
#include "wcop/errors.hpp"

namespace wcop {

DiskGrid::DiskGrid(int last, std::vector<double> rays, int first)
    : first_(first), last_(last), rays_(std::move(rays)) {
  if (first < 1 || last < first || last > 30)
    throw ParameterError("grid levels must satisfy 1 <= first <= last <= 30");
  for (double a : rays_)
    if (!std::isfinite(a)) throw ParameterError("ray angles must be finite");
}

double DiskGrid::radius(int level) { return 1.0 - std::ldexp(1.0, -level); }

int DiskGrid::angle_count(int level) { return std::max(64, 1 << std::min(level + 3, 30)); }

std::vector<cplx> DiskGrid::points(int level) const {
  const double r = radius(level);
  std::vector<cplx> pts;
  if (!rays_.empty()) {
    for (double a : rays_) pts.push_back(std::polar(r, a));
    return pts;
  }
  const int k = angle_count(level);
  pts.reserve(k);
  const double step = detail::kTwoPi / k;
  for (int i = 0; i < k; ++i) pts.push_back(std::polar(r, step * i));
  return pts;
}

}  // namespace wcop
