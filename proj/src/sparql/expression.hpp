#pragma once
#include "ontochat/sparql/ast.hpp"

#include <functional>
#include <optional>

namespace ontochat::sparql::detail {

using VarLookup = std::function<const rdf::Term*(const std::string&)>;

// std::nullopt signals an evaluation (type) error.
std::optional<rdf::Term> eval_expression(const Expression& e, const VarLookup& lookup);

// Effective boolean value; errors count as false.
bool filter_passes(const Expression& e, const VarLookup& lookup);

} // namespace ontochat::sparql::detail
