#pragma once
#include "qvertex/ratfun.hpp"

namespace qvertex {

// Parses "+ - * / ^" expressions with integer literals, the coefficient
// symbol q, and the given series variables, into num/den form. Whitespace is
// ignored; ^ takes an optionally signed integer exponent.
RationalElement parse_rational(const std::string& text, const std::vector<std::string>& vars);

// Parses a pure coefficient expression (q and integers only).
Scalar parse_scalar(const std::string& text);

} // namespace qvertex
