#pragma once

#include "sublevel/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sublevel {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& what);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Grammar (whitespace ignored):
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*        divisors must be nonzero constants
///   factor  := primary ['^' exponent]
///   primary := number | 'x' index | '(' expr ')'
///   exponent:= ['-'] integer | '(' ['-'] integer ['/' integer] ')'
///   number  := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]
/// Non-integer or negative exponents apply only to a single monomial.
/// dim = 0 infers the dimension from the largest variable index.
LaurentPolynomial parse_polynomial(const std::string& text, std::size_t dim = 0);

/// "global" (B = {0}), "local" (B = {e_i}), "outer" (B = {-e_i}),
/// or an explicit list such as "[(2,-1),(1,0)]".
std::vector<QVector> parse_domain(const std::string& text, std::size_t dim);

}  // namespace sublevel
