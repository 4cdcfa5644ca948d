#pragma once
#include "ontochat/rdf/term.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontochat::sparql {

// Evaluation output: a boolean (ASK) or a solution table (SELECT).
class ResultSet {
public:
    using Row = std::vector<std::optional<rdf::Term>>;

    ResultSet() = default;
    static ResultSet boolean(bool value);
    // Throws std::invalid_argument when a row's width differs from vars.
    static ResultSet table(std::vector<std::string> variables, std::vector<Row> rows);

    bool is_boolean() const { return is_boolean_; }
    bool boolean_value() const { return boolean_; }
    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<Row>& rows() const { return rows_; }

    // True for a SELECT result without rows. A false ASK is not "empty".
    bool empty() const { return !is_boolean_ && rows_.empty(); }

    friend bool operator==(const ResultSet&, const ResultSet&) = default;

private:
    bool is_boolean_ = false;
    bool boolean_ = false;
    std::vector<std::string> variables_;
    std::vector<Row> rows_;
};

class MalformedResults : public std::runtime_error {
public:
    explicit MalformedResults(const std::string& what) : std::runtime_error("malformed SPARQL results: " + what) {}
};

// application/sparql-results+json (head.vars, results.bindings, boolean).
nlohmann::json to_sparql_json(const ResultSet& results);
// Throws MalformedResults.
ResultSet from_sparql_json(const nlohmann::json& doc);

// Answer equivalence. Variable names are ignored: columns are aligned by a
// value-preserving column permutation, blank nodes by a consistent
// bijection. ordered=false compares rows as multisets.
bool results_equal(const ResultSet& a, const ResultSet& b, bool ordered);

// Total order used by ORDER BY: unbound < numeric literals (by value) <
// other literals (by lexical form) < IRIs < blank nodes. Returns <0, 0, >0.
int order_compare(const std::optional<rdf::Term>& a, const std::optional<rdf::Term>& b);

// Plain-text table (or "true"/"false") for human output.
std::string render_table(const ResultSet& results);

} // namespace ontochat::sparql
