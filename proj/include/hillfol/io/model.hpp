#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "hillfol/models/periodic_coeff.hpp"
#include "hillfol/models/plane.hpp"

namespace hillfol {

/// Model descriptor. Either a Hill foliation with coefficient p or a plane
/// 1-form A dx + B dy:
///   {"kind": "hill", "p": {"type": "exp"}}
///   {"kind": "plane", "A": "-y", "B": "x^2 + y"}
/// Built-in names: omega2, radial, p0, p1, exp.
struct ModelDescriptor {
  std::string kind;
  json source;
  std::optional<PeriodicCoeff> p;
  std::optional<Poly> p_exact;  // p as a polynomial in z when it is one
  std::optional<OneForm> form;

  const PeriodicCoeff& hill() const {
    if (!p) throw ArgumentError("model '" + source.dump() + "' is not a Hill model");
    return *p;
  }
  const OneForm& plane() const {
    if (!form) throw ArgumentError("model '" + source.dump() + "' is not a plane form");
    return *form;
  }

  static ModelDescriptor from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ArgumentError("model descriptor needs a \"kind\"");
    ModelDescriptor m;
    m.source = j;
    m.kind = j["kind"].get<std::string>();
    if (m.kind == "hill") {
      if (!j.contains("p")) throw ArgumentError("hill model needs \"p\"");
      const json& ps = j["p"];
      m.p = PeriodicCoeff::from_json(ps);
      std::string t = ps.value("type", "");
      if (t == "poly") m.p_exact = parse_poly(ps["expr"].get<std::string>(), VarList{"z"});
      if (t == "const") {
        const json& c = ps.contains("c") ? ps["c"] : json(0);
        if (c.is_string()) m.p_exact = Poly::constant(VarList{"z"}, GaussRat(parse_rational(c.get<std::string>())));
        else if (c.is_number_integer()) m.p_exact = Poly::constant(VarList{"z"}, GaussRat(c.get<long>()));
      }
    } else if (m.kind == "plane") {
      if (!j.contains("A") || !j.contains("B")) throw ArgumentError("plane model needs \"A\" and \"B\"");
      m.form = OneForm(vars_xy(), {parse_poly(j["A"].get<std::string>()), parse_poly(j["B"].get<std::string>())});
    } else {
      throw ArgumentError("unknown model kind '" + m.kind + "'");
    }
    return m;
  }

  static json builtin(const std::string& name) {
    if (name == "omega2") return {{"kind", "plane"}, {"A", "-y"}, {"B", "x^2 + y"}};
    if (name == "radial") return {{"kind", "plane"}, {"A", "-y"}, {"B", "x"}};
    if (name == "p0") return {{"kind", "hill"}, {"p", {{"type", "const"}, {"c", 0}}}};
    if (name == "p1") return {{"kind", "hill"}, {"p", {{"type", "const"}, {"c", 1}}}};
    if (name == "exp") return {{"kind", "hill"}, {"p", {{"type", "exp"}}}};
    throw ArgumentError("unknown built-in model '" + name + "'");
  }

  /// A file path, inline JSON, or a built-in name.
  static ModelDescriptor load(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return from_json(parse_text(arg));
    if (std::filesystem::is_regular_file(arg)) {
      std::ifstream in(arg);
      std::stringstream ss;
      ss << in.rdbuf();
      return from_json(parse_text(ss.str()));
    }
    return from_json(builtin(arg));
  }

 private:
  static json parse_text(const std::string& s) {
    try {
      return json::parse(s);
    } catch (const json::parse_error& e) {
      throw ArgumentError(std::string("model descriptor is not valid JSON: ") + e.what());
    }
  }
};

}  // namespace hillfol
