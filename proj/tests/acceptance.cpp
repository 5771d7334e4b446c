// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "wcop/criteria.hpp"
#include "wcop/operators.hpp"
#include "wcop/spaces.hpp"

using namespace wcop;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      why << (why.tellp() > 0 ? "; " : "") << what;
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const auto kHardy = SpaceSpec::hardy();
const auto kOne = FunctionSpec::constant(1.0);

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void singular_inner_limit(Check& c) {
  const auto phi = FunctionSpec::exp_of_moebius();
  for (double a : {0.3, 0.6, 1.0}) {
    const auto p = jc_quotient_probe(phi, a);
    const double want = 2.0 / (a * a);
    c.expect(p.limit && rel(*p.limit, want) <= 0.01,
             "alpha=" + fmt(a) + " limit " + (p.limit ? fmt(*p.limit) : std::string("none")) + " vs 2/alpha^2=" +
                 fmt(want));
  }
  c.expect(jc_quotient_probe(phi, 0.0).divergent, "zeta=1 not DIVERGENT");

  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cplx w = oracle::random_point(rng, 0.999);
    const double s = (1 - std::abs(w)) * (1 + std::abs(w));
    const double want = -std::expm1(-2.0 * s / std::norm(1.0 - w)) / s;
    worst = std::max(worst, rel(jc_ratio(phi, w), want));
  }
  c.expect(worst <= 1e-10, "closed-form identity off by " + fmt(worst));
}

void icecream(Check& c) {
  // f o phi alone is (1-z)^{-1/8}; the weight (1-z)^{-3/8} brings it to (1-z)^{-1/2}
  const auto comp = compose(taylor_coefficients(FunctionSpec::frac_power(0.25), 200),
                            taylor_coefficients(FunctionSpec::icecream(), 200));
  const auto weighted = multiply(taylor_coefficients(FunctionSpec::frac_power(0.375), 200), comp.series);
  double bare = 0.0, worst = 0.0;
  for (int n = 0; n <= 200; ++n) {
    bare = std::max(bare, std::abs(comp.series[n] - oracle::binomial_coeff(0.125, n)));
    worst = std::max(worst, std::abs(weighted[n] - oracle::central_binomial(n)));
  }
  c.expect(bare <= 1e-8, "composition off (1-z)^{-1/8} by " + fmt(bare));
  c.expect(worst <= 1e-8, "weighted composition off (1-z)^{-1/2} by " + fmt(worst));

  const double large = norm(kHardy, binomial_series(0.5, 4096));
  const double small = norm(kHardy, binomial_series(0.5, 256));
  const double ratio = (large * large) / (small * small);
  c.expect(ratio >= 1.15, "partial sum ratio " + fmt(ratio) + " (norm ratio " + fmt(large / small) + ")");

  ProbeOptions opt;
  opt.order = 2048;
  const auto k = kernel_test(FunctionSpec::frac_power(0.375), FunctionSpec::icecream(), kHardy, DiskGrid(10), opt);
  c.expect(k.verdict == Verdict::Unbounded, std::string("kernel_test ") + to_string(k.verdict));
}

void trace_class(Check& c) {
  const auto h = FunctionSpec::frac_power(0.25);
  const auto phi = oracle::scaled_identity(0.5);
  const auto a = build_operator_matrix(h, phi, kHardy, 256);
  const auto s = schatten_norm(a, 1.0);
  const double h_norm = std::sqrt([] {
    double t = 0.0;
    for (int n = 0; n < (1 << 20); ++n) t += std::pow(oracle::binomial_coeff(0.25, n), 2);
    return t;
  }());
  c.expect(s.flag == TraceFlag::Converged, std::string("S1 trace ") + to_string(s.flag));
  const auto& tr = s.truncation_trace;
  const double gap = std::abs(tr.back().value - tr[tr.size() - 2].value);
  c.expect(gap < 1e-6, "gap between N=128 and N=256 is " + fmt(gap));
  c.expect(s.value <= 2.0 * h_norm, "S1 " + fmt(s.value) + " > 2||h|| = " + fmt(2 * h_norm));

  QuadratureSpec fine;
  fine.radial_nodes = 12;
  fine.angles = 128;
  const auto si = schatten_integral(h, phi, kHardy, 1.0, {}, {}, fine);
  c.expect(si.verdict == Verdict::Converged, std::string("integral ") + to_string(si.verdict));
  const double d = si.details["check"]["relative_difference"].get<double>();
  c.expect(d <= 0.01, "resolutions differ by " + fmt(d));
}

void model_space_isometry(Check& c) {
  std::mt19937_64 rng(2024);
  const auto phi = oracle::blaschke_half();
  const int n = 1024;
  const auto p = kphi_project(PowerSeries(oracle::random_coeffs(rng, 8)), phi, n);
  const auto hs = p.value.resized(p.value.effective_degree(1e-17));
  const auto h = FunctionSpec::polynomial(hs);
  const double hn = norm(kHardy, hs);
  const auto a = build_operator_matrix(h, phi, kHardy, n);

  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    // |phi'| reaches 4 on the circle; degree N/8 keeps phi^k inside the truncation
    const PowerSeries f = PowerSeries(oracle::random_coeffs(rng, n / 8)).resized(n);
    Eigen::VectorXcd v(n + 1);
    for (int k = 0; k <= n; ++k) v[k] = f[k];
    const double want = hn * norm(kHardy, f);
    worst = std::max(worst, std::abs((a.entries() * v).norm() - want) / want);
  }
  c.expect(worst <= 1e-6, "isometry off by " + fmt(worst));

  const int m = 64;
  const auto g = gram_moments(h, phi, kHardy, m);
  const double gerr = (g - hn * hn * Eigen::MatrixXcd::Identity(m + 1, m + 1)).cwiseAbs().maxCoeff();
  c.expect(gerr <= 1e-7, "gram off by " + fmt(gerr));

  const auto prof = compactness_profile(h, phi, kHardy, DiskGrid(8, {}, 2));
  double dev = 0.0;
  for (const auto& s : prof.samples) dev = std::max(dev, std::abs(s.value - hn));
  c.expect(dev <= 1e-4 && prof.excluded.empty(), "profile deviates by " + fmt(dev));
}

void kernel_sigma(Check& c) {
  const std::pair<FunctionSpec, FunctionSpec> pairs[] = {
      {kOne, FunctionSpec::identity()},
      {kOne, FunctionSpec::monomial(2)},
      {kOne, oracle::scaled_identity(0.5)},
      {FunctionSpec::frac_power(0.25), oracle::scaled_identity(0.5)},
      {FunctionSpec::affine(1.0, 0.5, FunctionSpec::identity()), FunctionSpec::identity()},
  };
  const DiskGrid grid(10);
  for (const auto& [h, phi] : pairs) {
    const double sigma = operator_norm_estimate(build_operator_matrix(h, phi, kHardy, 1024));
    const auto k = kernel_test(h, phi, kHardy, grid);
    c.expect(k.sup <= sigma * (1 + 1e-3),
             h.type_name() + "/" + phi.type_name() + " kernel sup " + fmt(k.sup) + " > sigma " + fmt(sigma));
  }
  const double toeplitz = operator_norm_estimate(
      build_operator_matrix(pairs[4].first, FunctionSpec::identity(), kHardy, 2048));
  c.expect(rel(toeplitz, 1.5) <= 0.01, "sigma_max(T_{1+z/2}) = " + fmt(toeplitz));
}

void bergman(Check& c) {
  double worst = 0.0;
  for (double alpha : {0.0, 0.5, 2.0})
    for (int n = 0; n <= 50; ++n)
      worst = std::max(worst, rel(monomial_norm_sq(SpaceSpec::bergman(alpha), n), oracle::bergman_moment(n, alpha)));
  c.expect(worst <= 1e-10, "monomial norms off by " + fmt(worst));

  std::mt19937_64 rng(6);
  double rep = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto s = SpaceSpec::bergman(std::uniform_real_distribution<double>(-0.5, 3.0)(rng));
    const PowerSeries f(oracle::random_coeffs(rng, 24));
    const cplx w = oracle::random_point(rng, 0.9);
    const auto k = kernel_coeffs({s, KernelKind::Standard, w}, f.order());
    rep = std::max(rep, std::abs(inner_product(s, f, k) - f.eval(w)) / norm(s, f));
  }
  c.expect(rep <= 1e-10, "reproducing property off by " + fmt(rep));

  const auto s = SpaceSpec::bergman(1.0);
  const DiskGrid grid(10);
  const auto k = kernel_test(kOne, oracle::scaled_identity(0.5), s, grid);
  c.expect(k.verdict == Verdict::Bounded, std::string("kernel_test ") + to_string(k.verdict));
  const auto v = compactness_profile(kOne, oracle::scaled_identity(0.5), s, grid, {}, &k);
  c.expect(v.verdict == Verdict::Vanishing, std::string("compactness ") + to_string(v.verdict));
}

void ahern_clark(Check& c) {
  InnerFunctionData one;
  one.zeros = {0.5};
  const auto a = ahern_clark_sum(one, 0.0);
  c.expect(a.classification == Verdict::Finite && std::abs(a.value - 3.0) <= 1e-12, "zeros {0.5} gave " + fmt(a.value));

  InnerFunctionData atom;
  atom.atoms = {{0.0, 1.0}};
  c.expect(ahern_clark_sum(atom, 0.0).classification == Verdict::Infinite, "atom at probe not INFINITE");

  InnerFunctionData seq;
  seq.zeros = geometric_zero_sequence(0.0, 1.0, 0.5, 30);
  c.expect(ahern_clark_sum(seq, M_PI).classification == Verdict::Finite, "sequence at -1 not FINITE");
  c.expect(ahern_clark_sum(seq, 0.0).classification == Verdict::Infinite, "sequence at 1 not INFINITE");

  const auto r = sup_jc_ratio(FunctionSpec::monomial(2), DiskGrid(10));
  const double last = r.level_maxima().back();
  c.expect(r.verdict == Verdict::Bounded && rel(last, 2.0) <= 0.01, "sup_jc_ratio(z^2) = " + fmt(last));
}

void adelta(Check& c) {
  AdeltaOptions ad;
  ad.delta = 0.2;
  const auto h = FunctionSpec::frac_power(-0.1);  // (1 - z)^{0.1}
  const auto r = adelta_bound_check(h, oracle::blaschke_half(), ad, DiskGrid(8));
  c.expect(r.details["holds"].get<bool>(), fmt(r.details["violations"].get<double>()) + " violations");
  c.expect(r.details["precondition_ok"].get<bool>(), "sampled |h| exceeds c_delta");
  const double uniform = r.details["uniform_bound"].get<double>();
  const double ksup = r.details["kernel_sup"].get<double>();
  c.expect(uniform >= ksup, "uniform bound " + fmt(uniform) + " < kernel sup " + fmt(ksup));
}

void adjoint(Check& c) {
  const auto phi = oracle::scaled_identity(0.5);
  for (const auto& h : {kOne, FunctionSpec::frac_power(0.375)}) {
    const auto a = build_operator_matrix(h, phi, kHardy, 1024);
    for (cplx w : {cplx(0.3), cplx(0.0, 0.5), cplx(-0.7)}) {
      const double r = adjoint_kernel_check(a, h, phi, w);
      c.expect(r <= 1e-6, h.type_name() + " at " + fmt(w.real()) + "+" + fmt(w.imag()) + "i residual " + fmt(r));
    }
  }
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
      {"singular inner angular limit", singular_inner_limit},
      {"ice-cream cone unboundedness", icecream},
      {"trace class for sup|phi| < 1", trace_class},
      {"model space isometry", model_space_isometry},
      {"kernel test below sigma_max", kernel_sigma},
      {"Bergman norms and kernels", bergman},
      {"Ahern-Clark classification", ahern_clark},
      {"A_delta inequality", adelta},
      {"adjoint kernel identity", adjoint},
  };
  int failed = 0;
  int id = 0;
  for (const auto& [name, run] : criteria) {
    ++id;
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", id, name, secs, c.ok ? "" : ": ",
                c.why.str().c_str());
    std::fflush(stdout);
    if (!c.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
