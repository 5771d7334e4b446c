#include "wcop/json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace wcop {
namespace {

using ojson = nlohmann::ordered_json;

void newline(std::string& s, int indent, int depth) {
  if (indent <= 0) return;
  s += '\n';
  s.append(static_cast<std::size_t>(indent * depth), ' ');
}

void put(std::string& s, const ojson& j, int indent, int depth) {
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        s += "{}";
        return;
      }
      s += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) s += ',';
        first = false;
        newline(s, indent, depth + 1);
        s += ojson(it.key()).dump();
        s += indent > 0 ? ": " : ":";
        put(s, it.value(), indent, depth + 1);
      }
      newline(s, indent, depth);
      s += '}';
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        s += "[]";
        return;
      }
      // short numeric arrays stay on one line
      bool flat = j.size() <= 4;
      for (const auto& e : j) flat = flat && e.is_primitive();
      s += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) s += flat && indent > 0 ? ", " : ",";
        first = false;
        if (!flat) newline(s, indent, depth + 1);
        put(s, e, indent, depth + 1);
      }
      if (!flat) newline(s, indent, depth);
      s += ']';
      return;
    }
    case ojson::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        s += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      s += buf;
      // keep the token a JSON float so it reads back as a double
      if (s.find_first_of(".e", s.size() - std::char_traits<char>::length(buf)) ==
          std::string::npos)
        s += ".0";
      return;
    }
    default:
      s += j.dump();
  }
}

}  // namespace

std::string write_json(const ojson& j, int indent) {
  std::string s;
  put(s, j, indent, 0);
  if (indent > 0) s += '\n';
  return s;
}

void write_json(std::ostream& out, const ojson& j, int indent) { out << write_json(j, indent); }

}  // namespace wcop
