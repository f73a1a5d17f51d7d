#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kform/operator.hpp"
#include "kform/poly.hpp"

namespace kform {

/// Operator DSL:
///
///   [params <name>(,<name>)*;] axes <name>(,<name>)*; <expr>
///
/// `<expr>` is a sum of products of rational / complex literals (`3/2`, `2i`, `i`),
/// declared parameters and derivative factors `D<axis>`, each with an optional
/// `^<positive int>`. Parentheses group sub-expressions. Text starting with `{`
/// is read as a matrix operator (see parse_matrix_operator).
AnyOperator parse_operator(std::string_view src);
ScalarPDO parse_scalar_operator(std::string_view src);

/// {"axes": [...], "params": [...], "fields": [...], "entries": [[expr,...],...]}
MatrixPDO parse_matrix_operator(std::string_view json_text);

/// Scalar expression for one operator entry under an existing header.
ScalarPDO parse_operator_expression(std::string_view expr, const OperatorHeader& header);

/// Polynomial over named variables. If `variables` is given, any other
/// identifier is rejected; otherwise every identifier except `i` is a variable.
Poly parse_poly(std::string_view src, const std::optional<std::vector<std::string>>& variables = std::nullopt);

/// Quotient of polynomial expressions, e.g. "2/(lambda^2 - 1)"; every identifier except `i` is a variable.
RationalFunction parse_rational_function(std::string_view src);

/// Comma-separated `name=poly` list, e.g. "s_x=k, s_t=-k".
std::map<std::string, Poly> parse_assignments(std::string_view src);

/// Canonical DSL text; parse_operator(print_operator(L)) == L.
std::string print_operator(const ScalarPDO& op);
/// Expression part only (no header).
std::string print_expression(const ScalarPDO& op);
/// Matrix operators print as their JSON form.
std::string print_operator(const MatrixPDO& op);
std::string print_operator(const AnyOperator& op);

}  // namespace kform
