#include "fockmult/json_io.hpp"

#include <cstdio>

namespace fockmult {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Parse, where + ": " + what);
}

std::int64_t as_integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_fail(where, "expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> as_integer_array(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array, got " + j.dump());
  std::vector<std::int64_t> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_integer(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

double as_real(const Json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number, got " + j.dump());
  return j.get<double>();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json parse_json_text(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, what + ": malformed JSON at byte " + std::to_string(e.byte) + " (" +
                                      e.what() + ")");
  }
}

Element element_from_json(const MonoidSpec& spec, const Json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) parse_fail(where, "expected a one-key object, got " + j.dump());
  const std::string key = j.begin().key();
  const Json& value = j.begin().value();
  const std::string path = where + "." + key;

  Element e;
  switch (spec.kind()) {
    case MonoidKind::Cyclic:
    case MonoidKind::Integers:
    case MonoidKind::NonNegIntegers:
      if (key != "int") parse_fail(where, "expected {\"int\": n} for " + spec.label());
      e = Element::scalar(as_integer(value, path));
      break;
    case MonoidKind::FiniteGroup:
      if (key != "idx") parse_fail(where, "expected {\"idx\": k} for " + spec.label());
      e = Element::scalar(as_integer(value, path));
      break;
    case MonoidKind::NonNegVectors:
      if (key != "vec") parse_fail(where, "expected {\"vec\": [...]} for " + spec.label());
      e = Element(as_integer_array(value, path));
      break;
    case MonoidKind::FreeMonoid:
      if (key != "word") parse_fail(where, "expected {\"word\": [...]} for " + spec.label());
      e = Element::word(as_integer_array(value, path));
      break;
  }
  if (!is_valid(spec, e)) {
    std::string why = "not an element of " + spec.label();
    if (spec.kind() == MonoidKind::FreeMonoid) why += " (generators are 1.." + std::to_string(spec.parameter()) + ")";
    throw Error(ErrorCode::InvalidElement, path + ": " + j.dump() + " is " + why);
  }
  return e;
}

Json element_to_json(const MonoidSpec& spec, const Element& e) {
  validate(spec, e);
  switch (spec.kind()) {
    case MonoidKind::FiniteGroup: return Json{{"idx", e.value()}};
    case MonoidKind::NonNegVectors: return Json{{"vec", e.payload()}};
    case MonoidKind::FreeMonoid: return Json{{"word", e.payload()}};
    default: return Json{{"int", e.value()}};
  }
}

MonoidSpec monoid_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    parse_fail("spec", "expected an object with a string \"kind\"");
  }
  const std::string kind = j["kind"].get<std::string>();
  auto positive = [&](const char* key) {
    if (!j.contains(key)) parse_fail("spec." + std::string(key), "missing");
    const std::int64_t v = as_integer(j[key], "spec." + std::string(key));
    if (v < 1) parse_fail("spec." + std::string(key), "must be positive");
    return static_cast<int>(v);
  };
  if (kind == "cyclic") return MonoidSpec::cyclic(positive("n"));
  if (kind == "free") return MonoidSpec::free_monoid(positive("rank"));
  if (kind == "zplus") return MonoidSpec::non_negative_integers();
  if (kind == "z") return MonoidSpec::integers();
  if (kind == "zplus_d") return MonoidSpec::non_negative_vectors(positive("d"));
  if (kind == "group") {
    if (!j.contains("table") || !j["table"].is_array()) parse_fail("spec.table", "missing Cayley table");
    std::vector<std::vector<int>> table;
    for (std::size_t r = 0; r < j["table"].size(); ++r) {
      std::vector<int> row;
      for (std::int64_t v : as_integer_array(j["table"][r], "spec.table[" + std::to_string(r) + "]")) {
        row.push_back(static_cast<int>(v));
      }
      table.push_back(std::move(row));
    }
    std::vector<std::string> names;
    if (j.contains("names")) {
      if (!j["names"].is_array()) parse_fail("spec.names", "expected an array of strings");
      for (const auto& n : j["names"]) {
        if (!n.is_string()) parse_fail("spec.names", "expected an array of strings");
        names.push_back(n.get<std::string>());
      }
    }
    try {
      return MonoidSpec::finite_group(std::move(table), std::move(names));
    } catch (const Error& e) {
      parse_fail("spec.table", e.what());
    }
  }
  parse_fail("spec.kind", "unknown kind \"" + kind + "\"");
}

Json monoid_spec_to_json(const MonoidSpec& spec) {
  switch (spec.kind()) {
    case MonoidKind::Cyclic: return Json{{"kind", "cyclic"}, {"n", spec.parameter()}};
    case MonoidKind::FreeMonoid: return Json{{"kind", "free"}, {"rank", spec.parameter()}};
    case MonoidKind::NonNegIntegers: return Json{{"kind", "zplus"}};
    case MonoidKind::Integers: return Json{{"kind", "z"}};
    case MonoidKind::NonNegVectors: return Json{{"kind", "zplus_d"}, {"d", spec.parameter()}};
    case MonoidKind::FiniteGroup: return Json{{"kind", "group"}, {"table", spec.table()}, {"names", spec.names()}};
  }
  return Json{};
}

Polynomial polynomial_from_json(const MonoidSpec& spec, const Json& j, WindowPtr target) {
  if (!j.is_array()) parse_fail("symbol", "expected an array of {elem, re, im} terms");
  std::vector<std::pair<Element, Complex>> terms;
  int level = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "symbol[" + std::to_string(i) + "]";
    const Json& term = j[i];
    if (!term.is_object() || !term.contains("elem")) parse_fail(where, "expected an object with \"elem\"");
    for (const auto& [key, _] : term.items()) {
      if (key != "elem" && key != "re" && key != "im") parse_fail(where, "unexpected key \"" + key + "\"");
    }
    Element e = element_from_json(spec, term["elem"], where + ".elem");
    const double re = term.contains("re") ? as_real(term["re"], where + ".re") : 0.0;
    const double im = term.contains("im") ? as_real(term["im"], where + ".im") : 0.0;
    level = std::max(level, grade(spec, e));
    terms.emplace_back(std::move(e), Complex(re, im));
  }
  Polynomial p(target ? target : window(spec, level));
  for (const auto& [e, c] : terms) p.add(e, c);
  return p;
}

Json polynomial_to_json(const Polynomial& p) { return Json::parse(format_polynomial(p)); }

// Text entry points declared next to their types.

Element parse_element(const MonoidSpec& spec, std::string_view text) {
  return element_from_json(spec, parse_json_text(text, "element"));
}

std::string format_element(const MonoidSpec& spec, const Element& e) { return element_to_json(spec, e).dump(); }

MonoidSpec parse_monoid_spec(std::string_view text) { return monoid_spec_from_json(parse_json_text(text, "spec")); }

std::string format_monoid_spec(const MonoidSpec& spec) { return monoid_spec_to_json(spec).dump(); }

std::string format_polynomial(const Polynomial& p) {
  std::string out = "[";
  bool first = true;
  for (const auto& [idx, c] : p.terms()) {
    if (!first) out += ",";
    first = false;
    out += "{\"elem\":" + format_element(p.spec(), (*p.window())[idx]) + ",\"re\":" + format_double(c.real()) +
           ",\"im\":" + format_double(c.imag()) + "}";
  }
  out += "]";
  return out;
}

Polynomial parse_polynomial(const MonoidSpec& spec, std::string_view text) {
  return polynomial_from_json(spec, parse_json_text(text, "symbol"));
}

}  // namespace fockmult
