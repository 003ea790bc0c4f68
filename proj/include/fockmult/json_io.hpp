#pragma once

// nlohmann/json bridges for the text forms of elements, specs and polynomials.

#include <string>

#include "json.hpp"

#include "fockmult/fock.hpp"
#include "fockmult/monoid.hpp"

namespace fockmult {

using Json = nlohmann::json;

/// `where` is a path prefix used in error messages, e.g. "symbol[2].elem".
Element element_from_json(const MonoidSpec& spec, const Json& j, const std::string& where = "element");
Json element_to_json(const MonoidSpec& spec, const Element& e);

MonoidSpec monoid_spec_from_json(const Json& j);
Json monoid_spec_to_json(const MonoidSpec& spec);

/// Parses `[{"elem": <element>, "re": x, "im": y}, ...]` into a polynomial on
/// the smallest canonical window holding its support (or on `target` when
/// given). Repeated elements accumulate.
Polynomial polynomial_from_json(const MonoidSpec& spec, const Json& j, WindowPtr target = nullptr);
Json polynomial_to_json(const Polynomial& p);

/// Parses JSON text, mapping syntax errors to ErrorCode::Parse with the byte
/// offset of the failure.
Json parse_json_text(std::string_view text, const std::string& what);

}  // namespace fockmult
