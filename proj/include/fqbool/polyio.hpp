#pragma once

#include "fqbool/poly.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace fqb {

using json = nlohmann::json;

// Integers travel as decimal strings; plain JSON numbers are accepted on input.
Int int_from_json(const json& j);
inline json int_to_json(const Int& v) { return to_string(v); }

json ring_to_json(const Ring& r);
Ring ring_from_json(const json& j);

// Coefficient rendering: decimal string for scalar rings, coordinate array
// (strings) for extension fields.
json coeff_to_json(const Ring& r, const Int& c);
Int coeff_from_json(const Ring& r, const json& j);

// Term list [{"m": {...}, "c": ...}, ...].
json terms_to_json(const SparsePoly& f, const VarRegistry& vars);
// Full self-describing form {"ring", "vars", "terms"}.
json poly_to_json(const SparsePoly& f, const VarRegistry& vars);

// Accepts a term list, a {"terms": [...]} object or an expression string.
// Unknown variable names are interned into `vars`.
SparsePoly poly_from_json(const json& j, const Ring& r, VarRegistry& vars);

// Expression syntax: integers, identifiers, + - * ^ and parentheses. Over an
// extension field the ring's generator name denotes t.
SparsePoly parse_poly(std::string_view text, const Ring& r, VarRegistry& vars);
std::string format_poly(const SparsePoly& f, const VarRegistry& vars);
std::string format_poly(const SparsePoly& f, const std::vector<std::string>& names);

// A polynomial system over one ring: {"ring", "vars", "polys": [...]}.
struct PolySystem {
  Ring ring;
  VarRegistry vars;
  std::vector<SparsePoly> polys;
};

PolySystem system_from_json(const json& j);
json system_to_json(const PolySystem& s);

}  // namespace fqb
