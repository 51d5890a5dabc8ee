#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "bettibounds/formula.hpp"

namespace bettibounds {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line;
    std::size_t column;
};

/// Parses the quantifier-free formula grammar:
///
///   formula := or ; or := and ("|" and)* ; and := unary ("&" unary)* ;
///   unary := "!" unary | "(" formula ")" | atom ;
///   atom := poly relop "0" ; relop := "=" | ">" | "<" | ">=" | "<=" ;
///   poly := signed sum of terms; term := coeff ("*" var_power)* | var_power+ ;
///   var_power := "x"INT ("^"INT)? ; coeff := rational "p/q" or integer.
///
/// Whitespace is insignificant.  Textually identical polynomials share one
/// FunctionDescriptor.  When n_vars is given, any variable index >= n_vars is
/// rejected; otherwise the ambient dimension is inferred.
Formula parse_formula(const std::string& text, std::optional<std::size_t> n_vars = std::nullopt);

/// Parses "block+ ':' formula" with block := ("E"|"A") "(" INT ")".  The free
/// dimension n_0 is supplied by the caller (spec files declare it).
QuantifiedFormula parse_quantified(const std::string& text, std::size_t free_dim,
                                   std::optional<std::size_t> n_vars = std::nullopt);

/// Parses a bare polynomial in the grammar's poly sublanguage.
Polynomial parse_polynomial(const std::string& text, std::optional<std::size_t> n_vars = std::nullopt);

}  // namespace bettibounds
