#include "wcop/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "wcop/errors.hpp"

namespace wcop {
namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

struct VerdictName {
  Verdict v;
  const char* name;
};

constexpr VerdictName kVerdictNames[] = {
    {Verdict::Bounded, "BOUNDED-EVIDENCE"},
    {Verdict::Unbounded, "UNBOUNDED-EVIDENCE"},
    {Verdict::Vanishing, "VANISHING-EVIDENCE"},
    {Verdict::Nonvanishing, "NONVANISHING-EVIDENCE"},
    {Verdict::Converged, "CONVERGED"},
    {Verdict::Divergent, "DIVERGENT"},
    {Verdict::Finite, "FINITE"},
    {Verdict::Infinite, "INFINITE"},
    {Verdict::Inconclusive, "INCONCLUSIVE"},
};

ojson point(cplx z) { return ojson::array({z.real(), z.imag()}); }

template <class J>
cplx read_point(const J& j) {
  return {j.at(0).is_null() ? NAN : j.at(0).template get<double>(),
          j.at(1).is_null() ? NAN : j.at(1).template get<double>()};
}

template <class J>
double read_number(const J& j) { return j.is_null() ? NAN : j.template get<double>(); }

// Field table shared by to_json and from_json so the two cannot drift.
template <class F>
void for_each_threshold(Thresholds& t, F&& f) {
  f("growth_factor", t.growth_factor);
  f("stabilization", t.stabilization);
  f("vanishing_ratio", t.vanishing_ratio);
  f("nonvanishing_fraction", t.nonvanishing_fraction);
  f("cauchy_gap", t.cauchy_gap);
  f("trace_growth", t.trace_growth);
  f("tail_tolerance", t.tail_tolerance);
  f("outer_annulus_fraction", t.outer_annulus_fraction);
  f("jc_cauchy_gap", t.jc_cauchy_gap);
  f("bound_slack", t.bound_slack);
  f("boundary_rel_tol", t.boundary_rel_tol);
}

}  // namespace

const char* to_string(Verdict v) {
  for (const auto& e : kVerdictNames)
    if (e.v == v) return e.name;
  return "INCONCLUSIVE";
}

Verdict verdict_from_string(const std::string& s) {
  for (const auto& e : kVerdictNames)
    if (s == e.name) return e.v;
  throw ParseError("unknown verdict '" + s + "'");
}

ojson Thresholds::to_json() const {
  ojson o;
  auto copy = *this;
  for_each_threshold(copy, [&](const char* k, double& v) { o[k] = v; });
  return o;
}

Thresholds Thresholds::from_json(const json& j) { return from_json(j, Thresholds{}); }

Thresholds Thresholds::from_json(const json& j, Thresholds base) {
  if (!j.is_object()) throw ParseError("thresholds must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for_each_threshold(base, [&](const char* k, double& v) {
      if (key == k) {
        if (!value.is_number()) throw ParseError("threshold '" + key + "' must be a number");
        v = value.get<double>();
        found = true;
      }
    });
    if (!found) throw ParseError("unknown threshold '" + key + "'");
  }
  return base;
}

Verdict growth_verdict(std::span<const double> m, const Thresholds& t) {
  const std::size_t n = m.size();
  if (n >= 4) {
    const bool rising = m[n - 4] < m[n - 3] && m[n - 3] < m[n - 2] && m[n - 2] < m[n - 1];
    if (rising && m[n - 1] >= t.growth_factor * m[n - 4]) return Verdict::Unbounded;
  }
  if (n >= 3) {
    const double base = m[n - 3];
    if (m[n - 2] <= (1.0 + t.stabilization) * base && m[n - 1] <= (1.0 + t.stabilization) * base)
      return Verdict::Bounded;
  }
  return Verdict::Inconclusive;
}

Verdict vanishing_verdict(std::span<const double> m, const Thresholds& t) {
  const std::size_t n = m.size();
  if (n < 3) return Verdict::Inconclusive;
  const double sup = *std::max_element(m.begin(), m.end());
  if (m[n - 3] > m[n - 2] && m[n - 2] > m[n - 1] && m[n - 1] < t.vanishing_ratio * m[0])
    return Verdict::Vanishing;
  const auto [lo, hi] = std::minmax_element(m.end() - 3, m.end());
  if (*hi <= (1.0 + t.stabilization) * *lo && m[n - 1] >= t.nonvanishing_fraction * sup)
    return Verdict::Nonvanishing;
  return Verdict::Inconclusive;
}

std::vector<double> CriterionReport::level_maxima() const {
  std::vector<double> m;
  for (const auto& l : levels)
    if (l.points > 0) m.push_back(l.max_value);
  return m;
}

namespace {
ProfileLevel& level_entry(CriterionReport& r, int level, double radius) {
  auto it = std::find_if(r.levels.begin(), r.levels.end(),
                         [&](const ProfileLevel& l) { return l.level == level; });
  if (it != r.levels.end()) return *it;
  ProfileLevel l;
  l.level = level;
  l.radius = radius;
  r.levels.push_back(l);
  std::sort(r.levels.begin(), r.levels.end(),
            [](const auto& a, const auto& b) { return a.level < b.level; });
  return *std::find_if(r.levels.begin(), r.levels.end(),
                       [&](const ProfileLevel& x) { return x.level == level; });
}
}  // namespace

void record_sample(CriterionReport& r, int level, double radius, cplx w, double value) {
  auto& l = level_entry(r, level, radius);
  if (l.points == 0 || value > l.max_value) {
    l.max_value = value;
    l.argmax = w;
  }
  ++l.points;
  r.samples.push_back({level, w, value});
  if (r.samples.size() == 1 || value > r.sup) {
    r.sup = value;
    r.argmax = w;
  }
}

void record_exclusion(CriterionReport& r, int level, double radius, cplx w, std::string reason) {
  auto& l = level_entry(r, level, radius);
  ++l.excluded;
  r.excluded.push_back({level, w, std::move(reason)});
}

ojson CriterionReport::to_json() const {
  ojson o;
  o["id"] = id;
  if (skipped) {
    o["skipped"] = *skipped;
  } else {
    o["verdict"] = wcop::to_string(verdict);
    o["sup"] = sup;
    o["argmax"] = point(argmax);
  }
  ojson lv = ojson::array();
  for (const auto& l : levels) {
    ojson e;
    e["level"] = l.level;
    e["radius"] = l.radius;
    e["max_value"] = l.max_value;
    e["argmax"] = point(l.argmax);
    e["points"] = l.points;
    e["excluded"] = l.excluded;
    lv.push_back(std::move(e));
  }
  o["levels"] = std::move(lv);
  ojson ex = ojson::array();
  for (const auto& e : excluded) {
    ojson x;
    x["level"] = e.level;
    x["w"] = point(e.w);
    x["reason"] = e.reason;
    ex.push_back(std::move(x));
  }
  o["excluded"] = std::move(ex);
  o["details"] = details;
  o["notes"] = notes;
  o["thresholds"] = thresholds.to_json();
  ojson s = ojson::array();
  for (const auto& p : samples) s.push_back(ojson::array({p.level, p.w.real(), p.w.imag(), p.value}));
  o["samples"] = std::move(s);
  return o;
}

CriterionReport CriterionReport::from_json(const ojson& j) {
  try {
    CriterionReport r;
    r.id = j.at("id").get<std::string>();
    if (j.contains("skipped")) {
      r.skipped = j.at("skipped").get<std::string>();
    } else {
      r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
      r.sup = read_number(j.at("sup"));
      r.argmax = read_point(j.at("argmax"));
    }
    for (const auto& e : j.at("levels")) {
      ProfileLevel l;
      l.level = e.at("level").get<int>();
      l.radius = read_number(e.at("radius"));
      l.max_value = read_number(e.at("max_value"));
      l.argmax = read_point(e.at("argmax"));
      l.points = e.at("points").get<int>();
      l.excluded = e.at("excluded").get<int>();
      r.levels.push_back(l);
    }
    for (const auto& e : j.at("excluded"))
      r.excluded.push_back({e.at("level").get<int>(), read_point(e.at("w")),
                            e.at("reason").get<std::string>()});
    r.details = j.at("details");
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.thresholds = Thresholds::from_json(json(j.at("thresholds")));
    for (const auto& s : j.at("samples"))
      r.samples.push_back({s.at(0).get<int>(), {read_number(s.at(1)), read_number(s.at(2))},
                           read_number(s.at(3))});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("criterion report: ") + e.what());
  }
}

void write_profile_csv(const CriterionReport& r, std::ostream& out) {
  out << "level,w_re,w_im,value\n";
  char buf[128];
  for (const auto& s : r.samples) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", s.level, s.w.real(), s.w.imag(),
                  s.value);
    out << buf;
  }
}

}  // namespace wcop
