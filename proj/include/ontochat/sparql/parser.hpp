#pragma once
#include "ontochat/sparql/ast.hpp"

#include <string_view>

namespace ontochat::sparql {

// Parses the supported SPARQL subset: PREFIX, SELECT [DISTINCT] vars | * |
// (COUNT([DISTINCT] ?v|*) AS ?n), ASK, WHERE groups with ';'/',' triple
// abbreviations, FILTER, OPTIONAL, UNION, ORDER BY, LIMIT and OFFSET.
//
// Throws QuerySyntaxError for malformed text and UnsupportedSparqlFeature for
// valid SPARQL outside the subset (property paths, subqueries, GROUP BY, ...).
Query parse_query(std::string_view text);

} // namespace ontochat::sparql
