#pragma once

// Text syntax: factors `x[i,j]^e` joined by `*`, terms joined by `+` or `-`,
// rational coefficients written `p/q`. Printing is canonical (terms in
// descending shift order, factors in ascending variable order), so
// parse(print(f)) == f.

#include <cstdint>
#include <string>
#include <string_view>

#include "eqgb/core.hpp"

namespace eqgb {

/// Parses a polynomial. When `ring_width` is nonzero, a row index above it
/// raises RangeError. Syntax errors raise ParseError carrying the offset.
Polynomial parse_polynomial(std::string_view text, std::uint32_t ring_width = 0);

/// Parses a single monomial (coefficient must be absent or 1).
Monomial parse_monomial(std::string_view text, std::uint32_t ring_width = 0);

std::string to_string(const Monomial& m);
std::string to_string(const Polynomial& f);
std::string to_string(const Rational& q);
/// `1->3, 2->7` for the explicit points; `id` when the map is the identity.
std::string to_string(const ShiftMap& p);

}  // namespace eqgb
