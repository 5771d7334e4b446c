#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wcop/analysis.hpp"
#include "wcop/errors.hpp"
#include "wcop/json_writer.hpp"

using namespace wcop;
namespace fs = std::filesystem;

namespace {

RunConfig trivial() {
  RunConfig c;
  c.h = FunctionSpec::constant(1.0);
  c.phi = oracle::scaled_identity(0.5);
  c.trunc = 256;
  c.grid_levels = 10;
  c.criteria = {"kernel_test", "compactness", "schatten"};
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("wcop_analysis_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Criteria, AliasesResolve) {
  EXPECT_EQ(canonical_criterion("compactness"), "compactness_profile");
  EXPECT_EQ(canonical_criterion("schatten"), "schatten_norm");
  EXPECT_EQ(canonical_criterion("kernel_test"), "kernel_test");
  EXPECT_THROW(canonical_criterion("nope"), ParameterError);
  for (const auto& id : criterion_ids()) EXPECT_EQ(canonical_criterion(id), id);
}

TEST(RunConfig, ValidationRanges) {
  auto c = trivial();
  EXPECT_NO_THROW(c.validate());
  c.trunc = 4097;
  EXPECT_THROW(c.validate(), ParameterError);
  c = trivial();
  c.grid_levels = 15;
  EXPECT_THROW(c.validate(), ParameterError);
  c = trivial();
  c.p = 0.5;
  EXPECT_THROW(c.validate(), ParameterError);
  c = trivial();
  c.space.kind = SpaceSpec::Kind::Bergman;
  c.space.alpha = -1.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = trivial();
  c.deltas = {0.0};
  EXPECT_THROW(c.validate(), ParameterError);
  c = trivial();
  c.command = "plot";
  EXPECT_THROW(c.validate(), ParameterError);
}

TEST(RunConfig, SelectionIsCanonicalAndDeduplicated) {
  auto c = trivial();
  c.criteria = {"schatten", "kernel_test", "schatten_norm", "compactness"};
  const std::vector<std::string> want = {"schatten_norm", "kernel_test", "compactness_profile"};
  EXPECT_EQ(c.selected_criteria(), want);
  c.criteria.clear();
  c.command = "boundary";
  EXPECT_FALSE(c.selected_criteria().empty());
}

TEST(Analyze, TrivialConfig) {
  const auto r = analyze(trivial());
  ASSERT_EQ(r.criteria.size(), 3u);
  EXPECT_EQ(r.find("kernel_test")->verdict, Verdict::Bounded);
  EXPECT_EQ(r.find("compactness_profile")->verdict, Verdict::Vanishing);
  const auto* s = r.find("schatten_norm");
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->verdict, Verdict::Converged);
  ASSERT_TRUE(r.matrix && r.matrix->schatten);
  EXPECT_NEAR(r.matrix->schatten->value, 2.0, 1e-6);
  EXPECT_NEAR(r.matrix->operator_norm, 1.0, 1e-12);
  EXPECT_TRUE(r.provenance.contains("thresholds"));
  EXPECT_FALSE(r.provenance.contains("timings"));
}

TEST(Analyze, EveryRequestedCriterionAppearsOnce) {
  auto c = trivial();
  c.trunc = 64;
  c.grid_levels = 4;
  c.space = SpaceSpec::bergman(1.0);
  c.p = 2.0;
  c.samples = 1 << 12;
  c.criteria = criterion_ids();
  const auto r = analyze(c);
  ASSERT_EQ(r.criteria.size(), criterion_ids().size());
  for (const auto& id : criterion_ids()) {
    const auto n = std::count_if(r.criteria.begin(), r.criteria.end(), [&](const auto& x) { return x.id == id; });
    EXPECT_EQ(n, 1) << id;
  }
  // A_delta is Hardy only; phi = z/2 is not inner
  EXPECT_TRUE(r.find("adelta_bound_check")->skipped);
  EXPECT_TRUE(r.find("ahern_clark_sum")->skipped);
}

TEST(Analyze, HardyIntegralOutsideRangeIsSkipped) {
  auto c = trivial();
  c.p = 2.0;
  c.criteria = {"schatten_integral"};
  const auto r = analyze(c);
  ASSERT_TRUE(r.find("schatten_integral")->skipped);
}

TEST(Analyze, IcecreamReport) {
  RunConfig c;
  c.h = FunctionSpec::frac_power(0.375);
  c.phi = FunctionSpec::icecream();
  c.trunc = 512;
  c.grid_levels = 10;
  const auto r = analyze(c);
  EXPECT_EQ(r.find("kernel_test")->verdict, Verdict::Unbounded);
  EXPECT_TRUE(r.find("compactness_profile")->skipped);
  EXPECT_TRUE(r.find("pointwise_bound_check")->details["falsified"].get<bool>());
  // the column-block trace cannot certify S_1 next to unbounded evidence
  EXPECT_NE(r.find("schatten_norm")->verdict, Verdict::Converged);
}

TEST(Analyze, RejectsNonSelfMap) {
  auto c = trivial();
  c.phi = oracle::scaled_identity(2.0);
  EXPECT_THROW(analyze(c), PreconditionError);
}

TEST(Report, JsonRoundTrip) {
  const auto r = analyze(trivial());
  const auto text = write_json(r.to_json());
  const auto back = AnalysisReport::from_json(nlohmann::ordered_json::parse(text));
  EXPECT_EQ(write_json(back.to_json()), text);
}

TEST(Report, Deterministic) {
  EXPECT_EQ(write_json(analyze(trivial()).to_json()), write_json(analyze(trivial()).to_json()));
}

TEST(JsonWriter, FloatFormatting) {
  nlohmann::ordered_json j;
  j["a"] = 2.0;
  j["b"] = 0.1;
  j["c"] = 1e-20;
  j["d"] = std::nan("");
  j["e"] = 3;
  EXPECT_EQ(write_json(j, 0), R"({"a":2.0,"b":0.10000000000000001,"c":9.9999999999999995e-21,"d":null,"e":3})");
}

TEST(Emit, FilesAndProfiles) {
  const auto dir = scratch("emit");
  const auto r = analyze(trivial());
  emit(r, (dir / "report.json").string(), dir / "profiles");
  const auto first = slurp(dir / "report.json");
  emit(r, (dir / "report.json").string(), dir / "profiles");
  EXPECT_EQ(slurp(dir / "report.json"), first);
  EXPECT_EQ(write_json(AnalysisReport::from_json(nlohmann::ordered_json::parse(first)).to_json()), first);

  const auto csv = slurp(dir / "profiles" / "kernel_test.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "level,w_re,w_im,value");
  const auto rows = std::count(csv.begin(), csv.end(), '\n') - 1;
  EXPECT_EQ(static_cast<std::size_t>(rows), r.find("kernel_test")->samples.size());
  fs::remove_all(dir);
}

TEST(Emit, UnwritablePathIsIoError) {
  const auto r = analyze(trivial());
  EXPECT_THROW(emit(r, "/nonexistent-dir/x/report.json"), IoError);
}
