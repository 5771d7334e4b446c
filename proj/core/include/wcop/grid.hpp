#pragma once

#include <vector>

#include "wcop/series.hpp"

namespace wcop {

/// Probe points approaching the circle: level j sits on radius 1 - 2^{-j}
/// with max(64, 2^{j+3}) equispaced angles, or only the ray angles when a
/// restriction is given.
class DiskGrid {
 public:
  /// Levels first..last inclusive. Throws ParameterError unless
  /// 1 <= first <= last <= 30.
  explicit DiskGrid(int last, std::vector<double> rays = {}, int first = 1);

  int first_level() const { return first_; }
  int last_level() const { return last_; }
  int level_count() const { return last_ - first_ + 1; }
  const std::vector<double>& rays() const { return rays_; }

  static double radius(int level);
  static int angle_count(int level);

  /// Points of one level, in angle order.
  std::vector<cplx> points(int level) const;

 private:
  int first_;
  int last_;
  std::vector<double> rays_;
};

}  // namespace wcop
