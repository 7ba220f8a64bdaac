#pragma once

#include "susyqft/algebra.hpp"

#include <string>

namespace sqft {

// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | number ['i'] | 'i' | atom ['@' factor] | '(' expr ')'
//   atom   := 'one' | 'c(' list ')' | 'j(' list ')' | 'zeta(' list ')' | 'R(' expr ',' list ')'
//   list   := '[' [number (',' number)*] ']'
// R's lambda and the '@' shift must evaluate to scalars. Throws ParseError with the byte
// offset on syntax errors and DomainError for R with a zero test function.
Element parse_element(const std::string& text);

// Same text as to_string; parse_element(print_element(a)) == a.
std::string print_element(const Element& a);

}  // namespace sqft
