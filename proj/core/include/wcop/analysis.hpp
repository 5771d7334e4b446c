#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wcop/criteria.hpp"
#include "wcop/operators.hpp"

namespace wcop {

/// Library version string, e.g. "0.1.0".
const char* version();

/// Canonical criterion id for a name or alias ("compactness" ->
/// "compactness_profile", "schatten" -> "schatten_norm"). Throws
/// ParameterError for unknown names.
std::string canonical_criterion(const std::string& name);

/// All canonical ids, in dependency order.
const std::vector<std::string>& criterion_ids();

struct RunConfig {
  std::string command = "analyze";  // analyze | boundary | schatten | carleson
  FunctionSpec h = FunctionSpec::constant(1.0);
  FunctionSpec phi = FunctionSpec::identity();
  SpaceSpec space;
  int trunc = 1024;
  int grid_levels = 10;
  std::vector<std::string> criteria;  // empty: the command's defaults
  double p = 1.0;
  std::vector<double> zeta = {0.0};   // boundary probe angles
  std::vector<double> deltas = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
  std::size_t samples = std::size_t{1} << 20;
  std::optional<double> norm_bound;   // pointwise check; default sigma_max (1 + slack)
  double adelta_delta = 0.5;
  std::optional<double> c_delta;
  std::optional<double> tail_bound;   // Ahern-Clark
  bool bergman_derivative_kernel = false;  // schatten_integral in Bergman mode
  Thresholds thresholds;
  bool timings = false;

  /// Throws ParameterError unless N <= 4096, J <= 14, alpha > -1, p >= 1
  /// and the remaining fields are in range.
  void validate() const;
  /// Criteria to run: canonical, deduplicated, in the requested order.
  std::vector<std::string> selected_criteria() const;
  nlohmann::ordered_json to_json() const;
};

struct MatrixSummary {
  int order = 0;
  std::vector<double> sigma;  // leading singular values, up to 10
  double operator_norm = 0.0;
  std::optional<SchattenEstimate> schatten;

  nlohmann::ordered_json to_json() const;
  static MatrixSummary from_json(const nlohmann::ordered_json& j);
};

struct AnalysisReport {
  nlohmann::ordered_json config;
  std::vector<CriterionReport> criteria;
  std::optional<MatrixSummary> matrix;
  nlohmann::ordered_json provenance;

  const CriterionReport* find(const std::string& id) const;

  nlohmann::ordered_json to_json() const;
  static AnalysisReport from_json(const nlohmann::ordered_json& j);
};

/// Runs the selected criteria in dependency order: the matrix first, then
/// kernel_test before compactness_profile and the pointwise check.
AnalysisReport analyze(const RunConfig& config);

/// JSON report (deterministic text) to `json_path` ("-" for stdout) and,
/// when `profiles_dir` is set, one `<id>.csv` per criterion with samples.
/// Throws IoError on unwritable paths.
void emit(const AnalysisReport& report, const std::string& json_path,
          const std::optional<std::filesystem::path>& profiles_dir = {});

}  // namespace wcop
