#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wcop/series.hpp"

namespace wcop {

enum class Verdict {
  Bounded,
  Unbounded,
  Vanishing,
  Nonvanishing,
  Converged,
  Divergent,
  Finite,
  Infinite,
  Inconclusive,
};

/// "BOUNDED-EVIDENCE", "CONVERGED", ...
const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Evidence conventions. Every report echoes the values that produced it.
struct Thresholds {
  double growth_factor = 1.5;        // m_J / m_{J-3} for unbounded evidence
  double stabilization = 0.05;       // bounded / nonvanishing band
  double vanishing_ratio = 0.1;      // m_J < ratio * m_1
  double nonvanishing_fraction = 0.5;
  double cauchy_gap = 1e-6;          // Schatten truncation trace
  double trace_growth = 1.1;
  double tail_tolerance = 1e-6;      // per-point coefficient tail energy
  double outer_annulus_fraction = 0.01;
  double jc_cauchy_gap = 0.01;
  double bound_slack = 1e-3;         // default claimed norm = sigma_max (1 + slack)
  double boundary_rel_tol = 1e-10;   // boundary quadrature

  nlohmann::ordered_json to_json() const;
  /// Overrides the listed keys; unknown keys throw ParseError.
  static Thresholds from_json(const nlohmann::json& j);
  static Thresholds from_json(const nlohmann::json& j, Thresholds base);
  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// m_J/m_{J-3} >= growth with strict increase over the last three steps
/// gives Unbounded; the last two within `stabilization` of m_{J-2} (or
/// below it) gives Bounded.
Verdict growth_verdict(std::span<const double> level_max, const Thresholds& t);

/// Strict decrease over the last three levels ending below
/// vanishing_ratio * m_1 gives Vanishing; the last three within the band
/// and above nonvanishing_fraction * sup gives Nonvanishing.
Verdict vanishing_verdict(std::span<const double> level_max, const Thresholds& t);

struct ProfileLevel {
  int level = 0;
  double radius = 0.0;
  double max_value = 0.0;
  cplx argmax;
  int points = 0;
  int excluded = 0;
};

struct ProfileSample {
  int level = 0;
  cplx w;
  double value = 0.0;
};

struct ExcludedPoint {
  int level = 0;
  cplx w;
  std::string reason;
};

struct CriterionReport {
  std::string id;
  Verdict verdict = Verdict::Inconclusive;
  double sup = 0.0;
  cplx argmax;
  std::vector<ProfileLevel> levels;
  std::vector<ProfileSample> samples;
  std::vector<ExcludedPoint> excluded;
  /// Criterion-specific values (truncation metadata, probe tables, ...).
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::vector<std::string> notes;
  std::optional<std::string> skipped;
  Thresholds thresholds;

  std::vector<double> level_maxima() const;

  nlohmann::ordered_json to_json() const;
  static CriterionReport from_json(const nlohmann::ordered_json& j);
};

/// Adds one sample and updates the level summary and the global sup.
void record_sample(CriterionReport& r, int level, double radius, cplx w, double value);
void record_exclusion(CriterionReport& r, int level, double radius, cplx w, std::string reason);

/// Header `level,w_re,w_im,value`, one row per retained sample.
void write_profile_csv(const CriterionReport& r, std::ostream& out);

}  // namespace wcop
