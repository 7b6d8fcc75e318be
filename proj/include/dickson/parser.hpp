#ifndef DICKSON_PARSER_HPP
#define DICKSON_PARSER_HPP

#include <string>

#include "dickson/invariants.hpp"

namespace dickson {

/// Parses generator expressions in H*(V) with n variables:
///   expr   := term (('+' | '-') term)*
///   term   := '-'? factor ('*' factor)*
///   factor := atom ('^' EXP)?
///   atom   := INT | x<i> | y<i> | h[i] | d[m,i] | d[m,i;I=1,m-1] | L[m,i]
///           | M[m;s1,...] | Mhat[m;s1,...] | homit[i,j] | hswap[i,j]
///           | Lomit[m,i,t] | Momit[m,i,t] | '(' expr ')'
/// A '^' right after a bracketed symbol and not followed by a digit is the
/// hat (omega) suffix, so "h[1]^^2" is the square of hatted h_1. Integers are
/// reduced mod p. Throws ParseError (with byte offset) on bad syntax and
/// ArgumentError on out-of-range indices.
GenExpr parse_expr(const std::string& text, int p, int n);

}  // namespace dickson

#endif
