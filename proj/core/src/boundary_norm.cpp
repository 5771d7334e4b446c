#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "kernel_norm.hpp"
#include "numeric_util.hpp"
#include "wcop/errors.hpp"
#include "wcop/fft.hpp"

namespace wcop::detail {
namespace {

constexpr int kMeshSize = 4096;
constexpr double kPanelCap = kTwoPi / 16.0;
constexpr double kPeakThreshold = 0.5;
constexpr std::size_t kMaxPeaks = 32;
constexpr int kGrading = 8;
constexpr double kSnapRadius = 1e-6;

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Piece {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

Piece integrate_plain(const std::function<double(double)>& g, double a, double b,
                      double tol, unsigned depth) {
  Piece p;
  p.value = GK::integrate(g, a, b, depth, tol, &p.error, &p.l1);
  return p;
}

// Integral over the half panel between `anchor` and anchor + dir * len, nodes
// clustered at the anchor through theta = anchor + dir * len * t^8. The
// anchor is the wrapped breakpoint so angles near it keep full precision.
Piece integrate_graded(const std::function<double(double)>& f, double anchor, double dir,
                       double len, double tol, unsigned depth) {
  auto g = [&](double t) {
    const double t7 = std::pow(t, kGrading - 1);
    return f(anchor + dir * len * t7 * t) * kGrading * len * t7;
  };
  Piece p;
  p.value = GK::integrate(g, 0.0, 1.0, depth, tol, &p.error, &p.l1);
  return p;
}

}  // namespace

cplx real_power(cplx z, double e) {
  const double r = std::round(e);
  if (r == e && std::abs(r) <= 16.0) {
    int n = static_cast<int>(std::abs(r));
    cplx acc = 1.0, base = z;
    while (n) {
      if (n & 1) acc *= base;
      base *= base;
      n >>= 1;
    }
    return r < 0 ? 1.0 / acc : acc;
  }
  return std::pow(z, e);
}

CircleMean circle_mean(const std::function<double(double)>& f, std::vector<double> breaks,
                       double rel_tol, unsigned max_depth) {
  CircleMean out;
  auto guarded = [&](double theta) {
    const double v = f(theta);
    if (!std::isfinite(v)) {
      ++out.nonfinite;
      return 0.0;
    }
    return v;
  };
  const std::function<double(double)> g = guarded;

  for (auto& b : breaks) b = wrap_angle(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return b - a < 1e-13; }),
               breaks.end());
  const bool graded = !breaks.empty();
  if (!graded) breaks.push_back(0.0);

  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi_anchor = i + 1 < breaks.size() ? breaks[i + 1] : breaks.front();
    const double hi = i + 1 < breaks.size() ? breaks[i + 1] : breaks.front() + kTwoPi;
    const double len = hi - lo;
    if (len < 1e-14) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / kPanelCap)));
    for (int s = 0; s < pieces; ++s) {
      const double a = lo + len * s / pieces;
      const double b = s + 1 == pieces ? hi : lo + len * (s + 1) / pieces;
      const bool left = graded && s == 0;
      const bool right = graded && s + 1 == pieces;
      std::vector<Piece> parts;
      if (!left && !right) {
        parts.push_back(integrate_plain(g, a, b, rel_tol, max_depth));
      } else {
        const double m = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        parts.push_back(left ? integrate_graded(g, lo, 1.0, half, rel_tol, max_depth)
                             : integrate_plain(g, a, m, rel_tol, max_depth));
        parts.push_back(right ? integrate_graded(g, hi_anchor, -1.0, half, rel_tol, max_depth)
                              : integrate_plain(g, m, b, rel_tol, max_depth));
      }
      for (const auto& p : parts) {
        total += p.value;
        err += p.error;
      }
    }
  }
  out.value = total / kTwoPi;
  out.error = err / kTwoPi;
  // The GK error estimate is pessimistic; allow a wide margin over the
  // requested tolerance before calling a point unresolved.
  out.converged = std::isfinite(total) && err <= 1e3 * rel_tol * std::abs(total) + 1e-300;
  return out;
}

KernelNorm::KernelNorm(const FunctionSpec& h, const FunctionSpec& phi, SpaceSpec space,
                       KernelKind kind, KernelNormOptions options)
    : h_(h), phi_(phi), space_(space), kind_(kind), opt_(options) {
  if (kind_ == KernelKind::Standard) kind_ = KernelKind::Normalized;
  if (kind_ == KernelKind::Derivative) kind_ = KernelKind::NormalizedDerivative;
  boundary_ = space_.is_hardy() && !opt_.force_coefficients && has_boundary_values(h_) &&
              has_boundary_values(phi_);
  if (boundary_) {
    auto hb = singular_angles(h_);
    fixed_breaks_ = singular_angles(phi_);
    fixed_breaks_.insert(fixed_breaks_.end(), hb.begin(), hb.end());
    mesh_phi_.resize(kMeshSize);
    for (int k = 0; k < kMeshSize; ++k)
      mesh_phi_[k] = eval(phi_, std::polar(1.0, kTwoPi * k / kMeshSize));
    return;
  }
  const int n = opt_.order;
  if (n < 1) throw ParameterError("kernel norm needs truncation order >= 1");
  radius_ = default_sampling_radius(n);
  const std::size_t m = fft::next_power_of_two(4 * (static_cast<std::size_t>(n) + 1));
  h_samples_.resize(m);
  phi_samples_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const cplx z = std::polar(radius_, kTwoPi * static_cast<double>(k) / static_cast<double>(m));
    h_samples_[k] = eval(h_, z);
    phi_samples_[k] = eval(phi_, z);
  }
  beta_ = monomial_norms_sq(space_, 2 * n);
}

cplx KernelNorm::kernel_value(cplx w, cplx z) const {
  const double r = std::norm(w);
  const double q = 1.0 - r;
  const cplx d = 1.0 - std::conj(w) * z;
  const bool deriv = kind_ == KernelKind::NormalizedDerivative;
  if (space_.is_hardy()) {
    if (!deriv) return std::sqrt(q) / d;
    return z / (d * d) * std::sqrt(q * q * q / (1.0 + r));
  }
  const double a = space_.alpha;
  if (!deriv) return std::sqrt((a + 1.0) * std::pow(q, a + 2.0)) * real_power(d, -(a + 2.0));
  const double nsq = (a + 1.0) * (a + 2.0) * (1.0 + (a + 2.0) * r) / std::pow(q, a + 4.0);
  return (a + 1.0) * (a + 2.0) * z * real_power(d, -(a + 3.0)) / std::sqrt(nsq);
}

std::vector<double> KernelNorm::breakpoints(cplx w) const {
  std::vector<double> br = fixed_breaks_;
  if (std::abs(w) == 0.0) return br;
  const cplx wb = std::conj(w);
  std::vector<double> d(kMeshSize);
  for (int k = 0; k < kMeshSize; ++k) d[k] = std::abs(1.0 - wb * mesh_phi_[k]);
  std::vector<std::pair<double, int>> peaks;
  for (int k = 0; k < kMeshSize; ++k) {
    const double prev = d[(k + kMeshSize - 1) % kMeshSize];
    const double next = d[(k + 1) % kMeshSize];
    if (d[k] < kPeakThreshold && d[k] < prev && d[k] <= next) peaks.push_back({d[k], k});
  }
  std::sort(peaks.begin(), peaks.end());
  if (peaks.size() > kMaxPeaks) peaks.resize(kMaxPeaks);
  const double step = kTwoPi / kMeshSize;
  for (const auto& pk : peaks) {
    const double t0 = step * pk.second;
    auto dist = [&](double t) { return std::abs(1.0 - wb * eval(phi_, std::polar(1.0, t))); };
    const double t = boost::math::tools::brent_find_minima(dist, t0 - step, t0 + step, 40).first;
    const bool near_fixed = std::any_of(fixed_breaks_.begin(), fixed_breaks_.end(), [&](double b) {
      return arc_distance(b, t) < kSnapRadius;
    });
    if (!near_fixed) br.push_back(t);
  }
  return br;
}

KernelNormValue KernelNorm::boundary_value(cplx w) const {
  auto f = [&](double t) {
    const cplx z = std::polar(1.0, t);
    const cplx hv = eval(h_, z);
    const cplx pv = eval(phi_, z);
    return std::norm(hv) * std::norm(kernel_value(w, pv));
  };
  const auto m = circle_mean(f, breakpoints(w), opt_.rel_tol);
  KernelNormValue out;
  out.value = std::sqrt(std::max(m.value, 0.0));
  if (!m.converged) {
    out.ok = false;
    std::ostringstream os;
    os.precision(3);
    os << "boundary quadrature did not converge (error estimate " << m.error << ")";
    out.reason = os.str();
  }
  return out;
}

KernelNormValue KernelNorm::coefficient_value(cplx w) const {
  const std::size_t m = h_samples_.size();
  std::vector<cplx> buf(m);
  for (std::size_t k = 0; k < m; ++k) buf[k] = h_samples_[k] * kernel_value(w, phi_samples_[k]);
  fft::forward(buf);
  const int n = opt_.order;
  const double inv_m = 1.0 / static_cast<double>(m);
  std::vector<double> head(n + 1), tail(n);
  double rn = 1.0;
  for (int k = 0; k <= 2 * n; ++k) {
    const double e = std::norm(buf[k] * inv_m / rn) * beta_[k];
    if (k <= n)
      head[k] = e;
    else
      tail[k - n - 1] = e;
    rn *= radius_;
  }
  const double hs = pairwise_sum<double>(head);
  const double ts = pairwise_sum<double>(tail);
  KernelNormValue out;
  out.value = std::sqrt(hs);
  const double frac = hs + ts > 0.0 ? ts / (hs + ts) : 0.0;
  if (!(frac < opt_.tail_tolerance)) {
    out.ok = false;
    std::ostringstream os;
    os.precision(3);
    os << "coefficient tail energy " << frac << " above tolerance at N = " << n;
    out.reason = os.str();
  }
  return out;
}

KernelNormValue KernelNorm::operator()(cplx w) const {
  if (!(std::abs(w) < 1.0)) throw DomainError("kernel point needs |w| < 1");
  return boundary_ ? boundary_value(w) : coefficient_value(w);
}

}  // namespace wcop::detail
