#pragma once
#include "ontochat/rdf/graph.hpp"
#include "ontochat/sparql/ast.hpp"
#include "ontochat/sparql/results.hpp"

namespace ontochat::sparql {

// Bag-semantics evaluation over an immutable graph. Pure: the same query
// and graph always produce the same ResultSet. Filter type errors reject
// the row; nothing throws at runtime.
ResultSet evaluate(const Query& query, const rdf::Graph& graph);

} // namespace ontochat::sparql
