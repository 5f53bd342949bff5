#pragma once
// Infix expression reader for ScalarExpr.
//
// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('-' | '+') unary | power
//   power  := atom ('^' ['-'] integer)?
//   atom   := integer | 'i' | name | '(' expr ')' | ('sin' | 'cos') '(' expr ')'
// Trig arguments must be integer combinations of coordinates with no constant.

#include <string>
#include <vector>

#include "gkcurv/scalar.hpp"

namespace gkcurv {

ScalarExpr parse_expr(const std::string& text, const std::vector<std::string>& names);

}  // namespace gkcurv
