#ifndef CADKIT_PARSER_HPP
#define CADKIT_PARSER_HPP

#include "cadkit/polynomial.hpp"

#include <stdexcept>
#include <string_view>

namespace cadkit
{

struct ParseError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Parses integer/rational literals, variables of `order`, + - * / ^ and
/// parentheses, e.g. "x^2 + y^2 - 4" or "(x-4)*(y-1) - 1/4". Division is
/// only allowed by constants. Juxtaposition such as "2x" or "(x-1)(y-1)"
/// multiplies.
Polynomial parse_polynomial(std::string_view text, const VarOrder& order);

} // namespace cadkit

#endif // CADKIT_PARSER_HPP
