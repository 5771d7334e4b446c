#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "wcop/errors.hpp"
#include "wcop/functions.hpp"
#include "wcop/spec_io.hpp"

using namespace wcop;

namespace {

InnerFunctionData mixed_inner() {
  InnerFunctionData d;
  d.rotation = 0.7;
  d.vanishing_order = 2;
  d.zeros = {cplx(0.5, 0.2), cplx(-0.3, 0.6), 0.9};
  d.atoms = {{1.0, 0.4}, {4.0, 1.5}};
  return d;
}

// One representative per variant, plus nested compositions.
std::vector<FunctionSpec> zoo() {
  return {
      FunctionSpec::polynomial(PowerSeries({1.0, cplx(0.5, -0.25), 0.125, cplx(0.0, 0.3)})),
      FunctionSpec::truncated_series(binomial_series(0.3, 200)),
      FunctionSpec::monomial(3),
      FunctionSpec::inner(mixed_inner()),
      FunctionSpec::automorphism(cplx(0.3, -0.4)),
      FunctionSpec::frac_power(0.375),
      FunctionSpec::affine(cplx(0.1, 0.2), cplx(0.5, -0.1), FunctionSpec::icecream()),
      FunctionSpec::product({FunctionSpec::frac_power(0.25), oracle::blaschke_half()}),
      FunctionSpec::composition({FunctionSpec::frac_power(0.25), FunctionSpec::icecream()}),
      FunctionSpec::exp_of_moebius(),
      FunctionSpec::icecream(),
  };
}

}  // namespace

TEST(InnerEval, RotationByPi) {
  InnerFunctionData d;
  d.rotation = M_PI;
  const cplx v = inner_eval(d, cplx(0.2, 0.3));
  EXPECT_NEAR(std::abs(v - cplx(-1.0)), 0.0, 1e-15);
  d.vanishing_order = 2;
  const cplx z(0.2, 0.3);
  EXPECT_NEAR(std::abs(inner_eval(d, z) + z * z), 0.0, 1e-15);
}

TEST(InnerEval, SingleAtomAtOrigin) {
  InnerFunctionData d;
  d.atoms = {{0.0, 1.0}};
  EXPECT_NEAR(std::abs(inner_eval(d, 0.0) - std::exp(-1.0)), 0.0, 1e-15);
}

TEST(InnerEval, BlaschkeFactorAtOrigin) {
  InnerFunctionData d;
  d.zeros = {0.5};
  EXPECT_NEAR(std::abs(inner_eval(d, 0.0) - cplx(0.5)), 0.0, 1e-15);
}

TEST(InnerEval, BlaschkeNormalizationMakesValueAtOriginPositive) {
  InnerFunctionData d;
  d.zeros = {cplx(-0.3, 0.4)};
  const cplx v = inner_eval(d, 0.0);
  EXPECT_NEAR(v.real(), 0.5, 1e-15);
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(InnerEval, BoundaryIsDomainError) {
  EXPECT_THROW(inner_eval(mixed_inner(), 1.0), DomainError);
}

TEST(InnerFunctionData, ValidateRejectsBadData) {
  InnerFunctionData d;
  d.zeros = {1.0};
  EXPECT_THROW(d.validate(), ParameterError);
  d.zeros = {0.0};
  EXPECT_THROW(d.validate(), ParameterError);
  d.zeros = {};
  d.atoms = {{0.0, 0.0}};
  EXPECT_THROW(d.validate(), ParameterError);
  d.atoms = {};
  d.vanishing_order = -1;
  EXPECT_THROW(d.validate(), ParameterError);
}

TEST(InnerModulus, BelowOneInsideUnimodularOnCircle) {
  const auto d = mixed_inner();
  for (double r : {0.0, 0.3, 0.9, 0.99, 0.999})
    for (int k = 0; k < 256; ++k)
      EXPECT_LT(std::abs(inner_eval(d, std::polar(r, 2.0 * M_PI * k / 256))), 1.0 + 1e-12);
  const auto gate = inner_gate(FunctionSpec::inner(d));
  EXPECT_TRUE(gate.passed);
  EXPECT_LE(gate.max_deviation, 1e-6);
  EXPECT_GT(gate.skipped, 0u);
}

TEST(InnerModulus, GateRejectsNonInner) {
  EXPECT_FALSE(inner_gate(oracle::scaled_identity(0.5)).passed);
  EXPECT_FALSE(inner_gate(FunctionSpec::icecream()).passed);
}

TEST(DerivativeEval, Examples) {
  EXPECT_NEAR(std::abs(derivative_eval(FunctionSpec::monomial(2), 1.0) - cplx(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(derivative_eval(FunctionSpec::icecream(), 0.0) - cplx(0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(derivative_eval(FunctionSpec::exp_of_moebius(), 0.0) + 2.0 * std::exp(-1.0)),
              0.0, 1e-15);
}

TEST(DerivativeEval, MatchesCentralDifferences) {
  std::mt19937_64 rng(2024);
  const double h = 1e-6;
  for (const auto& f : zoo()) {
    for (int i = 0; i < 50; ++i) {
      const cplx z = oracle::random_point(rng, 0.8);
      const cplx fd = (eval(f, z + h) - eval(f, z - h)) / (2.0 * h);
      const cplx d = derivative_eval(f, z);
      EXPECT_LE(std::abs(d - fd), 1e-6 * std::max(1.0, std::abs(d))) << f.type_name() << " at " << z;
    }
  }
}

TEST(Eval, TaylorCoefficientsReproduceValues) {
  std::mt19937_64 rng(5);
  for (const auto& f : zoo()) {
    const auto a = taylor_coefficients(f, 256);
    for (int i = 0; i < 10; ++i) {
      const cplx z = oracle::random_point(rng, 0.7);
      EXPECT_LE(std::abs(a.eval(z) - eval(f, z)), 1e-10 * std::max(1.0, std::abs(eval(f, z))))
          << f.type_name() << " at " << z;
    }
  }
}

TEST(Eval, ExpOfMoebiusBoundaryValues) {
  const auto f = FunctionSpec::exp_of_moebius();
  // on the circle (1 + z)/(1 - z) is purely imaginary
  EXPECT_NEAR(std::abs(eval(f, std::polar(1.0, 0.8))), 1.0, 1e-14);
  EXPECT_EQ(eval(f, 1.0), cplx(0.0));
}

TEST(InnerData, StructuralDetection) {
  EXPECT_TRUE(inner_data(FunctionSpec::monomial(2)).has_value());
  EXPECT_TRUE(inner_data(FunctionSpec::exp_of_moebius()).has_value());
  EXPECT_TRUE(inner_data(FunctionSpec::product({FunctionSpec::automorphism(0.3), oracle::blaschke_half()}))
                  .has_value());
  EXPECT_FALSE(inner_data(FunctionSpec::icecream()).has_value());
  EXPECT_FALSE(inner_data(oracle::scaled_identity(0.5)).has_value());
  EXPECT_TRUE(is_finite_blaschke(oracle::blaschke_half()));
  EXPECT_FALSE(is_finite_blaschke(FunctionSpec::exp_of_moebius()));
}

TEST(InnerData, ExpOfMoebiusIsSingleAtom) {
  const auto d = inner_data(FunctionSpec::exp_of_moebius());
  ASSERT_TRUE(d);
  ASSERT_EQ(d->atoms.size(), 1u);
  EXPECT_EQ(d->atoms[0].angle, 0.0);
  EXPECT_EQ(d->atoms[0].mass, 1.0);
  const cplx z(0.3, -0.2);
  EXPECT_NEAR(std::abs(inner_eval(*d, z) - eval(FunctionSpec::exp_of_moebius(), z)), 0.0, 1e-14);
}

TEST(Spectrum, AtomsAndAccumulationPoints) {
  InnerFunctionData d;
  d.zeros = geometric_zero_sequence(0.0, 1.0, 0.5, 10);
  d.accumulation_angles = {0.0};
  d.atoms = {{-M_PI / 2, 1.0}, {2.0 * M_PI, 0.5}};
  const auto s = spectrum(d);
  ASSERT_EQ(s.boundary_angles.size(), 2u);
  EXPECT_EQ(s.boundary_angles[0], 0.0);
  EXPECT_NEAR(s.boundary_angles[1], 1.5 * M_PI, 1e-15);
  EXPECT_EQ(s.zeros.size(), 10u);
}

TEST(GeometricZeroSequence, Moduli) {
  const auto z = geometric_zero_sequence(M_PI, 1.0, 0.5, 30);
  ASSERT_EQ(z.size(), 30u);
  EXPECT_NEAR(std::abs(z[0]), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(z[29]), 1.0 - std::ldexp(1.0, -30), 1e-15);
  EXPECT_THROW(geometric_zero_sequence(0.0, 2.0, 0.5, 3), ParameterError);
}

TEST(SelfMapGate, RejectsLargeScaling) {
  EXPECT_TRUE(self_map_gate(FunctionSpec::icecream()).passed);
  EXPECT_TRUE(self_map_gate(FunctionSpec::exp_of_moebius()).passed);
  const auto bad = oracle::scaled_identity(1.01);
  EXPECT_FALSE(self_map_gate(bad).passed);
  EXPECT_THROW(require_self_map(bad), PreconditionError);
  try {
    require_self_map(bad);
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("1.01"), std::string::npos);
  }
}

TEST(ParseSpec, Examples) {
  const auto h = parse_spec_text(R"({"type":"frac_power","beta":0.375})");
  EXPECT_EQ(h, FunctionSpec::frac_power(0.375));
  const auto phi = parse_spec_text(R"({"type":"exp_of_moebius"})");
  EXPECT_EQ(phi, FunctionSpec::exp_of_moebius());
  const auto b = parse_spec_text(
      R"({"type":"blaschke","rotation":0,"vanishing_order":1,"zeros":[{"re":0.5,"im":0}],"atoms":[]})");
  EXPECT_EQ(b, oracle::blaschke_half());
  const cplx z(0.2, -0.4);
  EXPECT_NEAR(std::abs(eval(b, z) - z * (0.5 - z) / (1.0 - 0.5 * z)), 0.0, 1e-15);
}

TEST(ParseSpec, ComplexScalarForms) {
  const auto a = parse_spec_text(R"({"type":"automorphism","a":[0.1,0.2]})");
  const auto b = parse_spec_text(R"({"type":"automorphism","a":{"re":0.1,"im":0.2}})");
  EXPECT_EQ(a, b);
  const auto c = parse_spec_text(R"({"type":"series","coeffs":[[1,0],[0.5,-1]]})");
  EXPECT_EQ(taylor_coefficients(c, 1)[1], cplx(0.5, -1.0));
}

TEST(ParseSpec, Rejections) {
  EXPECT_THROW(parse_spec_text(R"({"type":"bogus"})"), ParseError);
  EXPECT_THROW(parse_spec_text(R"({"type":"frac_power"})"), ParseError);
  EXPECT_THROW(parse_spec_text(R"({"type":"blaschke","zeros":[{"re":1.2,"im":0}]})"), Error);
  EXPECT_THROW(parse_spec_text(R"({"type":"blaschke","atoms":[{"angle":0,"mass":-1}]})"), Error);
  EXPECT_THROW(parse_spec_text("{not json"), ParseError);
  EXPECT_THROW(parse_symbol(nlohmann::json::parse(
                   R"({"type":"affine","add":0,"scale":2,"inner":{"type":"monomial_power","n":1}})")),
               PreconditionError);
}

TEST(ParseSpec, EmitRoundTripIsBitExact) {
  for (const auto& f : zoo()) {
    const auto doc = emit_spec(f);
    const auto back = parse_spec(nlohmann::json::parse(doc.dump()));
    EXPECT_EQ(back, f) << doc.dump();
    EXPECT_EQ(emit_spec(back).dump(), doc.dump());
  }
}
