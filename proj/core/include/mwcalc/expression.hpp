#pragma once

#include <string>

#include "mwcalc/fields.hpp"

namespace mwcalc {

/// Parse an arithmetic expression into a black-box field.
///
/// Grammar: numbers, `pi`, variables (`x1`, `x2`, ... for one coordinate per
/// group; `x2_1` for coordinate 1 of group 2; 1-based), binary + - * / ^,
/// unary minus, parentheses, and the functions sin cos exp sqrt abs.
/// Throws ConfigError on syntax errors or out-of-range variables.
ScalarField parse_expression_field(IndexShape shape, const std::string& text);

}  // namespace mwcalc
