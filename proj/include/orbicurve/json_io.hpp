#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "divisor.hpp"
#include "errors.hpp"
#include "orbifold.hpp"
#include "rational.hpp"

namespace orbicurve {

// Deterministic JSON document for output: keys are sorted (std::map), floats
// print with 17 significant digits, rationals print as lowest-term strings.
// Identical content always dumps to identical bytes.
class JsonNode {
 public:
  using Array = std::vector<JsonNode>;
  using Object = std::map<std::string, JsonNode>;

  JsonNode() : v_(nullptr) {}
  JsonNode(bool b) : v_(b) {}
  JsonNode(int n) : v_(static_cast<long long>(n)) {}
  JsonNode(long long n) : v_(n) {}
  JsonNode(double d) : v_(d) {}
  JsonNode(const char* s) : v_(std::string(s)) {}
  JsonNode(std::string s) : v_(std::move(s)) {}
  JsonNode(const Rational& r) : v_(rat_str(r)) {}

  static JsonNode array() {
    JsonNode n;
    n.v_ = Array{};
    return n;
  }
  static JsonNode object() {
    JsonNode n;
    n.v_ = Object{};
    return n;
  }

  JsonNode& operator[](const std::string& key) { return std::get<Object>(v_)[key]; }
  void push_back(JsonNode n) { std::get<Array>(v_).push_back(std::move(n)); }

  std::string dump() const {
    std::string out;
    write(out);
    return out;
  }

 private:
  static void escape(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
          } else {
            out += c;
          }
      }
    }
    out += '"';
  }

  void write(std::string& out) const {
    if (std::holds_alternative<std::nullptr_t>(v_)) {
      out += "null";
    } else if (const bool* b = std::get_if<bool>(&v_)) {
      out += *b ? "true" : "false";
    } else if (const long long* n = std::get_if<long long>(&v_)) {
      out += std::to_string(*n);
    } else if (const double* d = std::get_if<double>(&v_)) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", *d);
      out += buf;
    } else if (const std::string* s = std::get_if<std::string>(&v_)) {
      escape(*s, out);
    } else if (const Array* a = std::get_if<Array>(&v_)) {
      out += '[';
      bool first = true;
      for (const auto& x : *a) {
        if (!first) out += ',';
        first = false;
        x.write(out);
      }
      out += ']';
    } else {
      const Object& o = std::get<Object>(v_);
      out += '{';
      bool first = true;
      for (const auto& [k, x] : o) {
        if (!first) out += ',';
        first = false;
        escape(k, out);
        out += ':';
        x.write(out);
      }
      out += '}';
    }
  }

  std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> v_;
};

// ---- input parsing (vendored reader; errors surface as InputError) ----

inline nlohmann::json parse_json(const std::string& text, const std::string& what) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError(what + ": malformed JSON");
  return j;
}

inline Multiplicity multiplicity_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Multiplicity::infinite();
    throw InputError("multiplicity: expected an integer >= 1 or \"inf\"");
  }
  if (!j.is_number_integer())
    throw InputError("multiplicity: expected an integer >= 1 or \"inf\"");
  return Multiplicity::finite(j.get<long long>());
}

// [{"place": "z-1", "mult": 2}, {"place": "inf", "mult": "inf"}]
inline OrbifoldDivisor orbifold_divisor_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("orbifold divisor: expected an array");
  OrbifoldDivisor d;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("place") || !item.contains("mult") ||
        !item["place"].is_string())
      throw InputError("orbifold divisor: entries need a string \"place\" and a \"mult\"");
    Place p = Place::parse(item["place"].get<std::string>());
    Multiplicity m = multiplicity_from_json(item["mult"]);
    if (d.at(p)) throw InputError("orbifold divisor: duplicate place " + p.str());
    d.set(p, m);
  }
  return d;
}

// {"base": {"kind": "P1"|"Disc"|"Elliptic"|"CompactGenus"|"NonCompactifiable",
//           "h": "x^3-x" (Elliptic), "genus": 2 (CompactGenus)},
//  "divisor": [...], "punctures": 0, "infinite_support": false}
// A bare array is shorthand for a projective-line orbifold with that divisor.
inline OrbifoldCurve orbifold_curve_from_json(const nlohmann::json& j) {
  OrbifoldCurve o;
  if (j.is_array()) {
    o.delta = orbifold_divisor_from_json(j);
    return o;
  }
  if (!j.is_object()) throw InputError("orbifold curve: expected an object or array");
  if (j.contains("base")) {
    const auto& b = j["base"];
    if (!b.is_object() || !b.contains("kind") || !b["kind"].is_string())
      throw InputError("orbifold curve: base needs a string \"kind\"");
    std::string kind = b["kind"].get<std::string>();
    if (kind == "P1") {
      o.base = BaseCurve::p1();
    } else if (kind == "Disc") {
      o.base = BaseCurve::disc();
    } else if (kind == "NonCompactifiable") {
      o.base = BaseCurve::noncompactifiable();
    } else if (kind == "Elliptic") {
      if (!b.contains("h") || !b["h"].is_string())
        throw InputError("orbifold curve: elliptic base needs a string \"h\" (cubic in x)");
      o.base = BaseCurve::elliptic(EllipticCurve::parse(b["h"].get<std::string>()));
    } else if (kind == "CompactGenus") {
      if (!b.contains("genus") || !b["genus"].is_number_integer())
        throw InputError("orbifold curve: compact base needs an integer \"genus\"");
      o.base = BaseCurve::compact_genus(b["genus"].get<int>());
    } else {
      throw InputError("orbifold curve: unknown base kind \"" + kind + "\"");
    }
  }
  if (j.contains("divisor")) o.delta = orbifold_divisor_from_json(j["divisor"]);
  if (j.contains("punctures")) {
    if (!j["punctures"].is_number_integer() || j["punctures"].get<int>() < 0)
      throw InputError("orbifold curve: punctures must be a nonnegative integer");
    o.punctures = j["punctures"].get<int>();
  }
  if (j.contains("infinite_support")) {
    if (!j["infinite_support"].is_boolean())
      throw InputError("orbifold curve: infinite_support must be a boolean");
    o.infinite_support = j["infinite_support"].get<bool>();
  }
  return o;
}

// ---- output building ----

inline JsonNode divisor_to_json(const Divisor& d) {
  JsonNode arr = JsonNode::array();
  for (const auto& [p, c] : d.terms()) {
    JsonNode item = JsonNode::object();
    item["coeff"] = JsonNode(c);
    item["place"] = JsonNode(p.str());
    arr.push_back(std::move(item));
  }
  return arr;
}

inline JsonNode multiplicity_to_json(Multiplicity m) {
  if (m.is_infinite()) return JsonNode("inf");
  return JsonNode(m.value());
}

inline JsonNode orbifold_divisor_to_json(const OrbifoldDivisor& d) {
  JsonNode arr = JsonNode::array();
  for (const auto& [p, m] : d.terms()) {
    JsonNode item = JsonNode::object();
    item["mult"] = multiplicity_to_json(m);
    item["place"] = JsonNode(p.str());
    arr.push_back(std::move(item));
  }
  return arr;
}

// a + b*sqrt(d) as {"a": rational, "b": rational, "d": integer}; plain
// rationals collapse to their string form.
inline JsonNode quad_to_json(const QuadExt& q) {
  if (q.is_rational()) return JsonNode(q.a());
  JsonNode n = JsonNode::object();
  n["a"] = JsonNode(q.a());
  n["b"] = JsonNode(q.b());
  n["d"] = JsonNode(static_cast<long long>(q.radicand()));
  return n;
}

inline JsonNode elliptic_point_to_json(const EllipticPoint& p) {
  if (p.is_infinity()) return JsonNode("infinity");
  JsonNode n = JsonNode::object();
  n["x"] = quad_to_json(p.x());
  n["y"] = quad_to_json(p.y());
  return n;
}

inline JsonNode report_header(const std::string& command) {
  JsonNode n = JsonNode::object();
  n["command"] = JsonNode(command);
  n["schema"] = JsonNode("orbicurve/1");
  return n;
}

}  // namespace orbicurve
