#pragma once

#include "hcx/scalar.hpp"

#include <string>

namespace hcx {

// Expression grammar: integer literals, ring variable names, + - * / ^ with
// nonnegative integer exponents, parentheses, unary minus. Fractions like
// 1/2 come out of the division operator. Division requires a denominator
// that is free of odd variables and has nonzero body.
Scalar parse_scalar(const std::string& text, const BaseRingPtr& ring);

// Same, but reports errors as "<where>: ..." for scenario diagnostics.
Scalar parse_scalar_at(const std::string& text, const BaseRingPtr& ring, const std::string& where);

} // namespace hcx
