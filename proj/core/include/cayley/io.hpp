#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "cayley/complex.hpp"
#include "cayley/group.hpp"
#include "cayley/ring.hpp"

namespace cayley {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Group-spec grammar.
//
//   spec    := product
//   product := atom ( 'x' atom )*          direct product
//   atom    := free | ( cyclic ( '*' cyclic )* )
//   cyclic  := 'Z' integer                 integer >= 2
//   free    := 'F' integer                 integer >= 1
//
// '*' (free product) binds tighter than 'x' and joins cyclic atoms only:
// "Z2*Z3", "F2", "F2xF2xZ3", "Z2*Z3xZ4" = (Z2*Z3) x Z4. Whitespace is
// ignored. Finite groups given by a multiplication table are loaded from
// JSON files ({"labels": [...], "table": [[...]], "identity": i}) instead.
// ---------------------------------------------------------------------------

GroupSpec parse_group_spec(std::string_view text);
std::string render_group_spec(const GroupSpec& spec);
GroupSpec group_spec_from_json(const Json& j);      // FiniteTable JSON object
GroupSpec load_group_file(const std::string& path); // reads + parses the JSON

// ---------------------------------------------------------------------------
// Element words.
//
//   free product     factor letters s, t, u, ... (factor 0 = 's'); powers
//                    by repetition: "stt" = s t^2
//   free group       letters a, b, c, ...; uppercase = inverse: "aB" = a b^-1
//   finite cyclic    generator letter t: "tt" = t^2
//   finite table     the element's label
//   direct product   parenthesized tuple "(w1,w2,...)"
//   identity         "e" (accepted for every family)
// ---------------------------------------------------------------------------

std::string render_element(const GroupSpec& spec, const GroupElement& g);
GroupElement parse_element(const GroupSpec& spec, std::string_view word);

// ---------------------------------------------------------------------------
// JSON forms (exact; rationals as "p/q" strings; byte-deterministic).
//
// RingElement: [[word, "p/q"], ...] sorted in element order.
// RingMatrix:  {"rows": r, "cols": c, "entries": [row][col] of element form}
// ---------------------------------------------------------------------------

Json element_to_json(const RingElement& a);
RingElement element_from_json(const GroupSpec& spec, const Json& j);
Json matrix_to_json(const RingMatrix& a);
RingMatrix matrix_from_json(const GroupSpec& spec, const Json& j);
Json complex_to_json(const CochainComplex& c);

}  // namespace cayley
