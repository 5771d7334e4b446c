#include "wcop/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wcop/errors.hpp"

namespace wcop {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what);
  return j.get<double>();
}

cplx complex_value(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], what), number(j[1], what)};
  if (j.is_object() && j.contains("re"))
    return {number(j.at("re"), what), j.contains("im") ? number(j.at("im"), what) : 0.0};
  throw ParseError(std::string("expected a complex number for ") + what);
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key))
    throw ParseError("missing field '" + std::string(key) + "' in " +
                     doc.value("type", std::string("spec")));
  return doc.at(key);
}

ojson emit_complex(cplx z) {
  if (z.imag() == 0.0 && !std::signbit(z.imag())) return z.real();
  return ojson::array({z.real(), z.imag()});
}

ojson emit_point(cplx z) {
  ojson o;
  o["re"] = z.real();
  o["im"] = z.imag();
  return o;
}

InnerFunctionData parse_inner(const json& doc) {
  InnerFunctionData d;
  if (doc.contains("rotation")) d.rotation = number(doc.at("rotation"), "rotation");
  if (doc.contains("vanishing_order")) {
    const auto& v = doc.at("vanishing_order");
    if (!v.is_number_integer()) throw ParseError("vanishing_order must be an integer");
    d.vanishing_order = v.get<int>();
  }
  if (doc.contains("zeros"))
    for (const auto& z : doc.at("zeros")) d.zeros.push_back(complex_value(z, "zero"));
  if (doc.contains("atoms"))
    for (const auto& a : doc.at("atoms"))
      d.atoms.push_back({number(field(a, "angle"), "angle"), number(field(a, "mass"), "mass")});
  if (doc.contains("accumulation_angles"))
    for (const auto& a : doc.at("accumulation_angles"))
      d.accumulation_angles.push_back(number(a, "accumulation angle"));
  return d;
}

std::vector<FunctionSpec> parse_parts(const json& doc) {
  const auto& parts = field(doc, "parts");
  if (!parts.is_array()) throw ParseError("'parts' must be an array");
  std::vector<FunctionSpec> out;
  for (const auto& p : parts) out.push_back(parse_spec(p));
  return out;
}

FunctionSpec parse_node(const json& doc) {
  if (!doc.is_object()) throw ParseError("function spec must be a JSON object");
  const auto& t = field(doc, "type");
  if (!t.is_string()) throw ParseError("'type' must be a string");
  const auto type = t.get<std::string>();

  if (type == "series") {
    const auto& c = field(doc, "coeffs");
    if (!c.is_array() || c.empty()) throw ParseError("'coeffs' must be a non-empty array");
    std::vector<cplx> v;
    for (const auto& x : c) v.push_back(complex_value(x, "coefficient"));
    const bool truncated = doc.value("truncated", false);
    return truncated ? FunctionSpec::truncated_series(PowerSeries(std::move(v)))
                     : FunctionSpec::polynomial(PowerSeries(std::move(v)));
  }
  if (type == "monomial_power") {
    const auto& n = field(doc, "n");
    if (!n.is_number_integer()) throw ParseError("'n' must be an integer");
    return FunctionSpec::monomial(n.get<int>());
  }
  if (type == "blaschke" || type == "singular_inner") return FunctionSpec::inner(parse_inner(doc));
  if (type == "automorphism") return FunctionSpec::automorphism(complex_value(field(doc, "a"), "a"));
  if (type == "frac_power") return FunctionSpec::frac_power(number(field(doc, "beta"), "beta"));
  if (type == "affine") {
    const cplx add = doc.contains("add") ? complex_value(doc.at("add"), "add") : cplx{};
    const cplx scale = doc.contains("scale") ? complex_value(doc.at("scale"), "scale") : cplx{1.0};
    return FunctionSpec::affine(add, scale, parse_spec(field(doc, "inner")));
  }
  if (type == "product") return FunctionSpec::product(parse_parts(doc));
  if (type == "composition") return FunctionSpec::composition(parse_parts(doc));
  if (type == "exp_of_moebius") return FunctionSpec::exp_of_moebius();
  if (type == "icecream") return FunctionSpec::icecream();
  throw ParseError("unknown function type '" + type + "'");
}

}  // namespace

FunctionSpec parse_spec(const json& doc) {
  try {
    return parse_node(doc);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

FunctionSpec parse_spec_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return parse_spec(doc);
}

FunctionSpec load_spec(const std::string& path_or_json) {
  const auto first = path_or_json.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_json[first] == '{')
    return parse_spec_text(std::string_view(path_or_json));
  std::ifstream in(path_or_json);
  if (!in) throw IoError("cannot read spec file '" + path_or_json + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(std::string_view(buf.str()));
}

FunctionSpec parse_symbol(const json& doc) {
  auto f = parse_spec(doc);
  require_self_map(f);
  return f;
}

ojson emit_spec(const FunctionSpec& f) {
  ojson o;
  o["type"] = f.type_name();
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, spec::Series>) {
          ojson c = ojson::array();
          for (auto x : s.coeffs.coeffs()) c.push_back(ojson::array({x.real(), x.imag()}));
          o["coeffs"] = std::move(c);
          if (!s.polynomial) o["truncated"] = true;
        } else if constexpr (std::is_same_v<T, spec::MonomialPower>) {
          o["n"] = s.n;
        } else if constexpr (std::is_same_v<T, spec::Inner>) {
          o["rotation"] = s.data.rotation;
          o["vanishing_order"] = s.data.vanishing_order;
          ojson z = ojson::array();
          for (auto a : s.data.zeros) z.push_back(emit_point(a));
          o["zeros"] = std::move(z);
          ojson at = ojson::array();
          for (const auto& a : s.data.atoms) {
            ojson e;
            e["angle"] = a.angle;
            e["mass"] = a.mass;
            at.push_back(std::move(e));
          }
          o["atoms"] = std::move(at);
          if (!s.data.accumulation_angles.empty())
            o["accumulation_angles"] = s.data.accumulation_angles;
        } else if constexpr (std::is_same_v<T, spec::Automorphism>) {
          o["a"] = emit_point(s.a);
        } else if constexpr (std::is_same_v<T, spec::FracPower>) {
          o["beta"] = s.beta;
        } else if constexpr (std::is_same_v<T, spec::Affine>) {
          o["add"] = emit_complex(s.add);
          o["scale"] = emit_complex(s.scale);
          o["inner"] = emit_spec(*s.inner);
        } else if constexpr (std::is_same_v<T, spec::Product> ||
                             std::is_same_v<T, spec::Composition>) {
          ojson p = ojson::array();
          for (const auto& part : s.parts) p.push_back(emit_spec(part));
          o["parts"] = std::move(p);
        }
      },
      f.node());
  return o;
}

}  // namespace wcop
