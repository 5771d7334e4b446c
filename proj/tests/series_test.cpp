#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wcop/errors.hpp"
#include "wcop/functions.hpp"
#include "wcop/series.hpp"

using namespace wcop;

namespace {

FunctionSpec half_geometric() {
  // 1/(1 - z/2) = (1 - z/2)^{-1}
  return FunctionSpec::composition(
      {FunctionSpec::frac_power(1.0), oracle::scaled_identity(0.5)});
}

}  // namespace

TEST(Eval, ConstantTermOfGeometric) {
  EXPECT_NEAR(std::abs(eval(half_geometric(), 0.0) - cplx(1.0)), 0.0, 1e-15);
}

TEST(Eval, IcecreamVanishesAtOrigin) {
  EXPECT_EQ(eval(FunctionSpec::icecream(), 0.0), cplx(0.0));
}

TEST(Eval, InverseSquareRootAtHalf) {
  const cplx v = eval(FunctionSpec::frac_power(0.5), 0.5);
  EXPECT_NEAR(v.real(), std::sqrt(2.0), 1e-12 * std::sqrt(2.0));
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(Eval, OutsideDiscIsDomainError) {
  EXPECT_THROW(eval(FunctionSpec::identity(), cplx(1.0, 1e-3)), DomainError);
}

TEST(Eval, TruncatedSeriesHasNoBoundaryValues) {
  const auto f = FunctionSpec::truncated_series(PowerSeries({1.0, 0.5, 0.25}));
  EXPECT_THROW(eval(f, 1.0), UnsupportedOperation);
  EXPECT_NO_THROW(eval(f, 0.99));
}

TEST(TaylorCoefficients, Geometric) {
  const auto a = taylor_coefficients(half_geometric(), 3);
  const double want[] = {1.0, 0.5, 0.25, 0.125};
  for (int n = 0; n <= 3; ++n) EXPECT_NEAR(std::abs(a[n] - want[n]), 0.0, 1e-15) << n;
}

TEST(TaylorCoefficients, Icecream) {
  const auto a = taylor_coefficients(FunctionSpec::icecream(), 3);
  const double want[] = {0.0, 0.5, 0.125, 0.0625};
  for (int n = 0; n <= 3; ++n) EXPECT_NEAR(std::abs(a[n] - want[n]), 0.0, 1e-15) << n;
}

TEST(TaylorCoefficients, InverseSquareRootMatchesCentralBinomial) {
  const auto a = taylor_coefficients(FunctionSpec::frac_power(0.5), 300);
  EXPECT_NEAR(a[2].real(), 0.375, 1e-15);
  for (int n = 0; n <= 300; ++n)
    EXPECT_NEAR(a[n].real(), oracle::central_binomial(n), 1e-12 * oracle::central_binomial(n)) << n;
}

TEST(TaylorCoefficients, SampledPathAgreesWithRecurrence) {
  // composition with phi(0) != 0 goes through sampling
  const auto f = FunctionSpec::composition(
      {FunctionSpec::frac_power(0.25), FunctionSpec::affine(0.2, 0.5, FunctionSpec::identity())});
  const int n = 256;
  const auto sampled = taylor_coefficients(f, n, default_sampling_radius(n));
  // (1 - 0.2 - z/2)^{-1/4} = 0.8^{-1/4} (1 - z/1.6)^{-1/4}
  for (int k = 0; k <= n; ++k) {
    const double want = std::pow(0.8, -0.25) * oracle::binomial_coeff(0.25, k) * std::pow(1.6, -k);
    EXPECT_NEAR(sampled[k].real(), want, 1e-12 + 1e-9 * want) << k;
  }
}

TEST(TaylorCoefficients, RadiusOneIsSamplingError) {
  EXPECT_THROW(taylor_coefficients(FunctionSpec::icecream(), 16, 1.0), SamplingError);
}

TEST(CoefficientsFromSamples, ShortOrOddLengthIsAliasing) {
  const auto p = PowerSeries::monomial(3, 16);
  auto s = sample_circle(p, 0.5, 32);
  EXPECT_THROW(coefficients_from_samples(s, 16), AliasingError);
  s.values.resize(96);
  EXPECT_THROW(coefficients_from_samples(s, 16), AliasingError);
}

TEST(CoefficientsFromSamples, PolynomialRoundTrip) {
  std::mt19937_64 rng(7);
  for (int k : {0, 1, 5, 31, 64}) {
    const PowerSeries p(oracle::random_coeffs(rng, k));
    const int order = 64;
    const auto back = coefficients_from_samples(sample_circle(p.resized(order), 0.9, 256), order);
    for (int n = 0; n <= order; ++n)
      EXPECT_NEAR(std::abs(back[n] - p[n]), 0.0, 1e-12 * std::max(1.0, std::abs(p[n]))) << k << ' ' << n;
  }
}

TEST(CoefficientsFromSamples, UnitCircleOnlyWhenAllowed) {
  const auto p = PowerSeries({1.0, 2.0, 3.0});
  const auto s = sample_circle(p, 1.0, 16);
  EXPECT_THROW(coefficients_from_samples(s, 2), SamplingError);
  const auto back = coefficients_from_samples(s, 2, true);
  EXPECT_NEAR(std::abs(back[2] - cplx(3.0)), 0.0, 1e-14);
}

TEST(Parseval, CoefficientSumMatchesBoundaryMean) {
  // (1 - z/2)^{-3/4}
  const auto f = FunctionSpec::composition(
      {FunctionSpec::frac_power(0.75), oracle::scaled_identity(0.5)});
  const int n = 128;
  const auto a = taylor_coefficients(f, n);
  double coeff_energy = 0.0;
  for (const auto& c : a.coeffs()) coeff_energy += std::norm(c);
  const double mean = oracle::circle_mean([&](double t) { return std::norm(eval(f, std::polar(1.0, t))); });
  EXPECT_NEAR(coeff_energy, mean, 1e-12);
}

TEST(Multiply, DifferenceOfSquares) {
  const auto p = multiply(PowerSeries({1.0, 1.0, 0.0}), PowerSeries({1.0, -1.0, 0.0}));
  ASSERT_EQ(p.order(), 2);
  EXPECT_EQ(p[0], cplx(1.0));
  EXPECT_EQ(p[1], cplx(0.0));
  EXPECT_EQ(p[2], cplx(-1.0));
}

TEST(Multiply, MismatchedOrdersTruncateToMin) {
  const auto p = multiply(PowerSeries({1.0, 1.0, 1.0, 1.0}), PowerSeries({1.0, 1.0}));
  EXPECT_EQ(p.order(), 1);
  EXPECT_EQ(p[1], cplx(2.0));
}

TEST(Compose, IdentityOuterReturnsInner) {
  std::mt19937_64 rng(3);
  PowerSeries phi(oracle::random_coeffs(rng, 12));
  phi = PowerSeries([&] {
    auto c = phi.vector();
    c[0] = 0.3;
    return c;
  }());
  const auto r = compose(PowerSeries::monomial(1, 12), phi);
  for (int n = 0; n <= 12; ++n) EXPECT_NEAR(std::abs(r.series[n] - phi[n]), 0.0, 1e-14);
}

TEST(Compose, IcecreamCollapsesToBinomial) {
  const int n = 200;
  const auto outer = taylor_coefficients(FunctionSpec::frac_power(0.25), n);
  const auto inner = taylor_coefficients(FunctionSpec::icecream(), n);
  const auto r = compose(outer, inner);
  EXPECT_EQ(r.tail_error, 0.0);
  for (int k = 0; k <= n; ++k)
    EXPECT_NEAR(r.series[k].real(), oracle::binomial_coeff(0.125, k), 1e-8) << k;
  // with the (1-z)^{-3/8} weight the product is (1-z)^{-1/2}
  const auto w = multiply(taylor_coefficients(FunctionSpec::frac_power(0.375), n), r.series);
  for (int k = 0; k <= n; ++k) EXPECT_NEAR(w[k].real(), oracle::central_binomial(k), 1e-8) << k;
}

TEST(Compose, ConstantTermOnCircleIsDomainError) {
  EXPECT_THROW(compose(PowerSeries({1.0, 1.0}), PowerSeries({1.0, 0.0})), DomainError);
}

TEST(Compose, MatchesPointEvaluation) {
  std::mt19937_64 rng(11);
  const int n = 96;
  const FunctionSpec zoo_f[] = {FunctionSpec::frac_power(0.25), FunctionSpec::icecream(),
                                FunctionSpec::exp_of_moebius(), oracle::blaschke_half()};
  const FunctionSpec zoo_phi[] = {oracle::scaled_identity(0.5), FunctionSpec::icecream(),
                                  oracle::blaschke_half(), FunctionSpec::automorphism(cplx(0.0, 0.0))};
  for (const auto& f : zoo_f) {
    for (const auto& phi : zoo_phi) {
      const auto r = compose(taylor_coefficients(f, n), taylor_coefficients(phi, n));
      for (int i = 0; i < 8; ++i) {
        const cplx z = oracle::random_point(rng, 0.5);
        const cplx want = eval(f, eval(phi, z));
        EXPECT_NEAR(std::abs(r.series.eval(z) - want), 0.0, 1e-8)
            << f.type_name() << " o " << phi.type_name() << " at " << z;
      }
    }
  }
}

TEST(BinomialSeries, MatchesProductFormula) {
  const auto s = binomial_series(0.375, 500);
  for (int n = 0; n <= 500; n += 7)
    EXPECT_NEAR(s[n].real(), oracle::binomial_coeff(0.375, n), 1e-12 * oracle::binomial_coeff(0.375, n));
}

TEST(ExpSeries, ExponentialOfIdentity) {
  const auto e = exp_series(PowerSeries::monomial(1, 20));
  double fact = 1.0;
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) fact *= n;
    EXPECT_NEAR(e[n].real(), 1.0 / fact, 1e-16) << n;
  }
}

TEST(PowerSeries, RejectsNonFinite) {
  EXPECT_THROW(PowerSeries({1.0, cplx(std::nan(""), 0.0)}), ParameterError);
  EXPECT_THROW(PowerSeries(std::vector<cplx>{}), ParameterError);
}

TEST(PowerSeries, EffectiveDegree) {
  EXPECT_EQ(PowerSeries({1.0, 2.0, 0.0, 0.0}).effective_degree(), 1);
  EXPECT_EQ(PowerSeries::zero(5).effective_degree(), 0);
}
