#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "flatdeg/anf.hpp"

namespace flatdeg {

/*! Parse an ANF expression.
 *
 * Grammar:
 *   expression := term (('⊕' | '+' | '^') term)*
 *   term       := '0' | '1' | variable+
 *   variable   := 'x' decimal-index          (index >= 1)
 *
 * Juxtaposed variables multiply, whitespace is ignored, a repeated variable
 * within a term is idempotent (x1x1 = x1), duplicate terms cancel in pairs,
 * and '0' contributes nothing. When declared_n is absent the variable count
 * is inferred as the highest index used.
 *
 * Throws ParseError (with byte offset) on syntax errors, indexes exceeding
 * declared_n, or indexes above the global cap.
 */
Anf parse_anf(std::string_view text, std::optional<int> declared_n = {});

/*! Canonical printing: terms sorted by (weight ascending, mask ascending),
 * joined with " ⊕ "; the zero function prints "0", the constant-1 monomial
 * prints "1". Output re-parses to the identical monomial set. */
std::string print_anf(const Anf& anf);

}  // namespace flatdeg
