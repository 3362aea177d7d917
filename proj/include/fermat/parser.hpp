#pragma once

#include "fermat/exppoly.hpp"

#include <string>

namespace fermat {

/// Parses an exponential-polynomial expression.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?
///   primary := number | number 'i' | 'i' | 'pi' | 'e' | 'z'N
///            | 'exp' '(' expr ')' | 'sqrt' '(' expr ')' | '(' expr ')'
///
/// Powers must be integers; negative powers and division are allowed only
/// for a single exponential term with constant coefficient. sqrt takes a
/// constant and uses the principal branch. `dim` == 0 infers the dimension
/// from the largest variable index (at least 1).
///
/// Throws SyntaxError (with line and column), NonPolynomialExponent for
/// exp of a non-polynomial, IndexOutOfRange for z_j with j > dim.
ExpPoly parse_expr(const std::string &text, std::size_t dim = 0, double tol = kDefaultZeroTol);

/// Polynomial-only variant; throws NonPolynomialExponent if exp survives.
Poly parse_poly(const std::string &text, std::size_t dim = 0, double tol = kDefaultZeroTol);

/// A constant expression such as "2*pi*i" or "-sqrt(3)/6".
CNum parse_constant(const std::string &text);

/// Deterministic text in graded-lex order; parse_expr round-trips it.
std::string print_expr(const ExpPoly &e);
std::string print_poly(const Poly &p);
/// %.17g based literal that parse_constant reads back exactly.
std::string print_cnum(CNum v);

} // namespace fermat
