#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>

namespace wcop::detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

inline double arc_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}

// Fixed-tree pairwise sum: the result does not depend on anything but the
// order of the input.
template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.size() <= 8) {
    T acc{};
    for (const auto& x : v) acc += x;
    return acc;
  }
  const auto half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline bool finite(std::complex<double> z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace wcop::detail
