#include "wcop/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include <Eigen/Core>
#include <boost/version.hpp>
#include <fftw3.h>

#include "wcop/errors.hpp"
#include "wcop/json_writer.hpp"
#include "wcop/spec_io.hpp"

#ifndef WCOP_VERSION
#define WCOP_VERSION "0.0.0"
#endif

namespace wcop {
namespace {

using ojson = nlohmann::ordered_json;

struct Alias {
  const char* name;
  const char* id;
};

constexpr Alias kAliases[] = {
    {"compactness", "compactness_profile"},
    {"schatten", "schatten_norm"},
    {"pointwise", "pointwise_bound_check"},
    {"adelta", "adelta_bound_check"},
    {"jc_probe", "jc_quotient_probe"},
    {"ahern_clark", "ahern_clark_sum"},
    {"carleson", "carleson_box_measure"},
    {"adjoint", "adjoint_kernel_check"},
};

const std::vector<std::string> kIds = {
    "schatten_norm",       "adjoint_kernel_check", "kernel_test",
    "compactness_profile", "pointwise_bound_check", "adelta_bound_check",
    "schatten_integral",   "sup_jc_ratio",          "jc_quotient_probe",
    "ahern_clark_sum",     "carleson_box_measure",
};

std::vector<std::string> default_criteria(const std::string& command) {
  if (command == "boundary") return {"jc_quotient_probe", "sup_jc_ratio", "ahern_clark_sum"};
  if (command == "schatten") return {"schatten_norm", "schatten_integral"};
  if (command == "carleson") return {"carleson_box_measure"};
  return {"kernel_test", "compactness_profile", "schatten_norm", "pointwise_bound_check"};
}

// sigma_1..sigma_10 lower bounds and the Schatten trace share one matrix.
bool needs_matrix(const std::vector<std::string>& ids, const RunConfig& c) {
  for (const auto& id : ids) {
    if (id == "schatten_norm" || id == "adjoint_kernel_check") return true;
    if (id == "pointwise_bound_check" && !c.norm_bound) return true;
  }
  return c.command == "analyze" || c.command == "schatten";
}

const char* trace_flag_name(TraceFlag f) { return to_string(f); }

TraceFlag trace_flag_from(const std::string& s) {
  for (auto f : {TraceFlag::Converged, TraceFlag::Divergent, TraceFlag::Inconclusive})
    if (s == to_string(f)) return f;
  throw ParseError("unknown trace flag '" + s + "'");
}

Verdict verdict_of(TraceFlag f) {
  switch (f) {
    case TraceFlag::Converged: return Verdict::Converged;
    case TraceFlag::Divergent: return Verdict::Divergent;
    default: return Verdict::Inconclusive;
  }
}

ojson schatten_json(const SchattenEstimate& s) {
  ojson o;
  o["p"] = s.p;
  o["value"] = s.value;
  o["infinite"] = s.infinite;
  o["flag"] = trace_flag_name(s.flag);
  o["cauchy_gap"] = s.cauchy_gap;
  ojson tr = ojson::array();
  for (const auto& t : s.truncation_trace) tr.push_back(ojson::array({t.columns, t.value}));
  o["truncation_trace"] = std::move(tr);
  return o;
}

double num(const ojson& j) { return j.is_null() ? NAN : j.get<double>(); }

SchattenEstimate schatten_from(const ojson& o) {
  SchattenEstimate s;
  s.p = num(o.at("p"));
  s.value = num(o.at("value"));
  s.infinite = o.at("infinite").get<bool>();
  s.flag = trace_flag_from(o.at("flag").get<std::string>());
  s.cauchy_gap = num(o.at("cauchy_gap"));
  for (const auto& t : o.at("truncation_trace"))
    s.truncation_trace.push_back({t.at(0).get<int>(), num(t.at(1))});
  return s;
}

class Stopwatch {
 public:
  void lap(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    ojson e;
    e["stage"] = stage;
    e["seconds"] = std::chrono::duration<double>(now - last_).count();
    laps_.push_back(std::move(e));
    last_ = now;
  }
  const ojson& laps() const { return laps_; }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  ojson laps_ = ojson::array();
};

CriterionReport skipped(const std::string& id, const Thresholds& t, std::string why) {
  CriterionReport r;
  r.id = id;
  r.thresholds = t;
  r.skipped = std::move(why);
  return r;
}

CriterionReport schatten_norm_report(const SchattenEstimate& s, int order, const Thresholds& t) {
  CriterionReport r;
  r.id = "schatten_norm";
  r.thresholds = t;
  r.verdict = verdict_of(s.flag);
  r.sup = s.value;
  r.details = schatten_json(s);
  r.details["order"] = order;
  return r;
}

CriterionReport jc_report(const RunConfig& c) {
  CriterionReport r;
  r.id = "jc_quotient_probe";
  r.thresholds = c.thresholds;
  ojson probes = ojson::array();
  int converged = 0, divergent = 0;
  bool have_sup = false;
  for (double a : c.zeta) {
    const auto p = jc_quotient_probe(c.phi, a, c.thresholds);
    probes.push_back(p.to_json());
    if (p.limit) {
      ++converged;
      if (!have_sup || *p.limit > r.sup) {
        r.sup = *p.limit;
        r.argmax = std::polar(1.0, a);
        have_sup = true;
      }
    }
    if (p.divergent) ++divergent;
  }
  const int n = static_cast<int>(c.zeta.size());
  r.verdict = converged == n ? Verdict::Converged
              : divergent == n ? Verdict::Divergent
                               : Verdict::Inconclusive;
  r.details["probes"] = std::move(probes);
  return r;
}

CriterionReport ahern_clark_report(const RunConfig& c) {
  const auto data = inner_data(c.phi);
  if (!data) return skipped("ahern_clark_sum", c.thresholds, "phi has no inner-function data");
  CriterionReport r;
  r.id = "ahern_clark_sum";
  r.thresholds = c.thresholds;
  ojson points = ojson::array();
  int finite = 0;
  bool have_sup = false;
  for (double a : c.zeta) {
    const auto res = ahern_clark_sum(*data, a, c.tail_bound, c.thresholds);
    ojson e;
    e["angle"] = a;
    e.update(res.to_json());
    points.push_back(std::move(e));
    if (res.classification == Verdict::Finite) {
      ++finite;
      if (!have_sup || res.value > r.sup) {
        r.sup = res.value;
        r.argmax = std::polar(1.0, a);
        have_sup = true;
      }
    }
  }
  const int n = static_cast<int>(c.zeta.size());
  r.verdict = finite == n ? Verdict::Finite : finite == 0 ? Verdict::Infinite : Verdict::Inconclusive;
  r.details["points"] = std::move(points);
  r.notes.push_back("the vanishing order N counts as N zeros at the origin");
  return r;
}

CriterionReport carleson_report(const RunConfig& c) {
  CarlesonOptions opt;
  opt.deltas = c.deltas;
  opt.samples = c.samples;
  CriterionReport r;
  r.id = "carleson_box_measure";
  r.thresholds = c.thresholds;
  ojson per = ojson::array();
  for (double a : c.zeta) {
    const auto one = carleson_box_measure(c.h, c.phi, c.space, a, opt, c.thresholds);
    for (const auto& s : one.samples) {
      record_sample(r, s.level, one.levels[static_cast<std::size_t>(s.level - 1)].radius, s.w,
                    s.value);
    }
    if (r.details.empty()) {
      for (const auto& key : {"space", "ratio_exponent", "samples", "radius", "area_grid"})
        if (one.details.contains(key)) r.details[key] = one.details[key];
    }
    ojson e;
    e["angle"] = a;
    e["verdict"] = to_string(one.verdict);
    e["boxes"] = one.details["boxes"];
    per.push_back(std::move(e));
  }
  // sup over the probe angles at each box size
  r.verdict = growth_verdict(r.level_maxima(), c.thresholds);
  r.details["angles"] = std::move(per);
  r.notes.push_back("levels index box sizes by decreasing delta; level radius holds delta");
  return r;
}

ojson libraries() {
  ojson o;
  o["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
               "." + std::to_string(EIGEN_MINOR_VERSION);
  o["fftw"] = std::string(fftw_version);
  o["boost"] = BOOST_LIB_VERSION;
  o["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  return o;
}

}  // namespace

const char* version() { return WCOP_VERSION; }

std::string canonical_criterion(const std::string& name) {
  for (const auto& id : kIds)
    if (name == id) return id;
  for (const auto& a : kAliases)
    if (name == a.name) return a.id;
  throw ParameterError("unknown criterion '" + name + "'");
}

const std::vector<std::string>& criterion_ids() { return kIds; }

void RunConfig::validate() const {
  if (command != "analyze" && command != "boundary" && command != "schatten" &&
      command != "carleson")
    throw ParameterError("unknown command '" + command + "'");
  if (trunc < 1) throw ParameterError("truncation order must be >= 1");
  if (trunc > kMaxDenseOrder)
    throw ParameterError("truncation order must be <= " + std::to_string(kMaxDenseOrder));
  if (grid_levels < 1 || grid_levels > 14) throw ParameterError("grid levels must lie in [1, 14]");
  if (!space.is_hardy() && !(space.alpha > -1.0)) throw ParameterError("alpha must be > -1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("Schatten exponent p must be >= 1");
  if (zeta.empty()) throw ParameterError("need at least one boundary angle");
  for (double a : zeta)
    if (!std::isfinite(a)) throw ParameterError("boundary angles must be finite");
  if (deltas.empty()) throw ParameterError("need at least one box size");
  for (double d : deltas)
    if (!(d > 0.0 && d <= 2.0)) throw ParameterError("box size delta must lie in (0, 2]");
  if (samples < 64 || samples > (std::size_t{1} << 24))
    throw ParameterError("boundary samples must lie in [64, 2^24]");
  if (norm_bound && !(*norm_bound >= 0.0)) throw ParameterError("norm bound must be >= 0");
  if (!(adelta_delta > 0.0 && adelta_delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
  if (c_delta && !(*c_delta >= 0.0)) throw ParameterError("c_delta must be >= 0");
  if (tail_bound && !(*tail_bound >= 0.0)) throw ParameterError("tail bound must be >= 0");
  (void)selected_criteria();
}

std::vector<std::string> RunConfig::selected_criteria() const {
  const auto& src = criteria.empty() ? default_criteria(command) : criteria;
  std::vector<std::string> out;
  for (const auto& name : src) {
    const auto id = canonical_criterion(name);
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
  return out;
}

ojson RunConfig::to_json() const {
  ojson o;
  o["command"] = command;
  o["h"] = emit_spec(h);
  o["phi"] = emit_spec(phi);
  ojson s;
  s["kind"] = space.name();
  if (!space.is_hardy()) s["alpha"] = space.alpha;
  o["space"] = std::move(s);
  o["trunc"] = trunc;
  o["grid_levels"] = grid_levels;
  o["criteria"] = selected_criteria();
  o["p"] = p;
  o["zeta"] = zeta;
  o["deltas"] = deltas;
  o["samples"] = samples;
  o["norm_bound"] = norm_bound ? ojson(*norm_bound) : ojson(nullptr);
  o["adelta_delta"] = adelta_delta;
  o["c_delta"] = c_delta ? ojson(*c_delta) : ojson(nullptr);
  o["tail_bound"] = tail_bound ? ojson(*tail_bound) : ojson(nullptr);
  o["bergman_derivative_kernel"] = bergman_derivative_kernel;
  o["thresholds"] = thresholds.to_json();
  return o;
}

ojson MatrixSummary::to_json() const {
  ojson o;
  o["order"] = order;
  o["sigma"] = sigma;
  o["operator_norm"] = operator_norm;
  o["schatten"] = schatten ? schatten_json(*schatten) : ojson(nullptr);
  return o;
}

MatrixSummary MatrixSummary::from_json(const ojson& j) {
  try {
    MatrixSummary m;
    m.order = j.at("order").get<int>();
    for (const auto& v : j.at("sigma")) m.sigma.push_back(num(v));
    m.operator_norm = num(j.at("operator_norm"));
    if (!j.at("schatten").is_null()) m.schatten = schatten_from(j.at("schatten"));
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix summary: ") + e.what());
  }
}

const CriterionReport* AnalysisReport::find(const std::string& id) const {
  for (const auto& c : criteria)
    if (c.id == id) return &c;
  return nullptr;
}

ojson AnalysisReport::to_json() const {
  ojson o;
  o["config"] = config;
  ojson cs = ojson::array();
  for (const auto& c : criteria) cs.push_back(c.to_json());
  o["criteria"] = std::move(cs);
  o["matrix"] = matrix ? matrix->to_json() : ojson(nullptr);
  o["provenance"] = provenance;
  return o;
}

AnalysisReport AnalysisReport::from_json(const ojson& j) {
  try {
    AnalysisReport r;
    r.config = j.at("config");
    for (const auto& c : j.at("criteria")) r.criteria.push_back(CriterionReport::from_json(c));
    if (!j.at("matrix").is_null()) r.matrix = MatrixSummary::from_json(j.at("matrix"));
    r.provenance = j.at("provenance");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("analysis report: ") + e.what());
  }
}

AnalysisReport analyze(const RunConfig& c) {
  c.validate();
  require_self_map(c.phi);
  const auto ids = c.selected_criteria();
  const auto wanted = [&](const char* id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
  };
  Stopwatch clock;
  AnalysisReport out;
  out.config = c.to_json();

  std::optional<TruncationMatrix> a;
  if (needs_matrix(ids, c)) {
    a = build_operator_matrix(c.h, c.phi, c.space, c.trunc);
    MatrixSummary m;
    m.order = c.trunc;
    m.sigma = leading_singular_values(*a, std::min(10, c.trunc + 1));
    m.operator_norm = m.sigma.empty() ? 0.0 : m.sigma.front();
    clock.lap("matrix");
    if (wanted("schatten_norm")) {
      m.schatten = schatten_norm(*a, c.p, {c.thresholds.cauchy_gap, c.thresholds.trace_growth});
      clock.lap("schatten_norm");
    }
    out.matrix = std::move(m);
  }

  const DiskGrid grid(c.grid_levels);
  ProbeOptions probe;
  probe.order = c.trunc;
  probe.thresholds = c.thresholds;
  std::optional<CriterionReport> kernel;

  for (const auto& id : kIds) {
    if (!wanted(id.c_str())) continue;
    if (id == "schatten_norm") {
      out.criteria.push_back(schatten_norm_report(*out.matrix->schatten, c.trunc, c.thresholds));
    } else if (id == "adjoint_kernel_check") {
      out.criteria.push_back(adjoint_kernel_report(*a, c.h, c.phi, {0.3, {0.0, 0.5}, -0.7}));
    } else if (id == "kernel_test") {
      kernel = kernel_test(c.h, c.phi, c.space, grid, probe);
      out.criteria.push_back(*kernel);
    } else if (id == "compactness_profile") {
      out.criteria.push_back(
          compactness_profile(c.h, c.phi, c.space, grid, probe, kernel ? &*kernel : nullptr));
    } else if (id == "pointwise_bound_check") {
      const double b = c.norm_bound.value_or(out.matrix ? out.matrix->operator_norm *
                                                               (1.0 + c.thresholds.bound_slack)
                                                         : 0.0);
      auto r = pointwise_bound_check(c.h, c.phi, b, grid, c.thresholds);
      if (!c.norm_bound) r.notes.push_back("norm bound defaults to sigma_max (1 + bound_slack)");
      if (!c.space.is_hardy())
        r.notes.push_back("the inequality is checked with Hardy kernels only");
      out.criteria.push_back(std::move(r));
    } else if (id == "adelta_bound_check") {
      if (!c.space.is_hardy()) {
        out.criteria.push_back(skipped(id, c.thresholds, "the A_delta bound is a Hardy-space result"));
      } else {
        AdeltaOptions ad;
        ad.delta = c.adelta_delta;
        ad.c_delta = c.c_delta;
        out.criteria.push_back(adelta_bound_check(c.h, c.phi, ad, grid, probe));
      }
    } else if (id == "schatten_integral") {
      if (c.space.is_hardy() && !(c.p < 2.0)) {
        out.criteria.push_back(
            skipped(id, c.thresholds, "the Hardy integral test covers 1 <= p < 2 only"));
      } else {
        QuadratureSpec q;
        q.bergman_kernel =
            c.bergman_derivative_kernel ? KernelKind::NormalizedDerivative : KernelKind::Normalized;
        QuadratureSpec fine = q;
        fine.radial_nodes = 12;
        fine.angles = 128;
        out.criteria.push_back(schatten_integral(c.h, c.phi, c.space, c.p, q, probe, fine));
      }
    } else if (id == "sup_jc_ratio") {
      out.criteria.push_back(sup_jc_ratio(c.phi, grid, c.thresholds));
    } else if (id == "jc_quotient_probe") {
      out.criteria.push_back(jc_report(c));
    } else if (id == "ahern_clark_sum") {
      out.criteria.push_back(ahern_clark_report(c));
    } else if (id == "carleson_box_measure") {
      out.criteria.push_back(carleson_report(c));
    }
    clock.lap(id);
  }

  // A Schatten-class operator is bounded; a converged trace next to
  // unbounded kernel evidence means the row truncation hides mass.
  const auto* k = out.find("kernel_test");
  for (auto& r : out.criteria) {
    if (r.id == "schatten_norm" && r.verdict == Verdict::Converged && k &&
        k->verdict == Verdict::Unbounded) {
      r.verdict = Verdict::Inconclusive;
      r.notes.push_back(
          "trace converged in the column blocks but kernel_test shows UNBOUNDED-EVIDENCE; "
          "column mass beyond row N is not seen by the truncation");
    }
  }

  out.provenance["version"] = version();
  out.provenance["thresholds"] = c.thresholds.to_json();
  out.provenance["libraries"] = libraries();
  if (c.timings) out.provenance["timings"] = clock.laps();
  return out;
}

void emit(const AnalysisReport& report, const std::string& json_path,
          const std::optional<std::filesystem::path>& profiles_dir) {
  const auto text = write_json(report.to_json());
  if (json_path == "-") {
    std::cout << text;
  } else {
    std::ofstream f(json_path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + json_path + "' for writing");
    f << text;
    if (!f) throw IoError("write to '" + json_path + "' failed");
  }
  if (!profiles_dir) return;
  std::error_code ec;
  std::filesystem::create_directories(*profiles_dir, ec);
  if (ec) throw IoError("cannot create '" + profiles_dir->string() + "': " + ec.message());
  for (const auto& c : report.criteria) {
    if (c.samples.empty()) continue;
    const auto path = *profiles_dir / (c.id + ".csv");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    write_profile_csv(c, f);
    if (!f) throw IoError("write to '" + path.string() + "' failed");
  }
}

}  // namespace wcop
