#pragma once
#include "ontochat/rdf/graph.hpp"
#include "ontochat/rdf/term.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ontochat::sparql {

// Position is a byte offset into the query text. what() is phrased so it
// can be handed back to a language model verbatim.
class QuerySyntaxError : public std::runtime_error {
public:
    QuerySyntaxError(std::size_t position, std::string expected, const std::string& found);
    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

class UnsupportedSparqlFeature : public std::runtime_error {
public:
    explicit UnsupportedSparqlFeature(std::string name);
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

struct Variable {
    std::string name;  // without '?'
    friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<rdf::Term, Variable>;

struct TriplePatternAst {
    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;
};

struct Expression {
    enum class Op {
        Constant,
        Var,
        Or,
        And,
        Not,
        Eq,
        Ne,
        Lt,
        Le,
        Gt,
        Ge,
        Regex,
        Str,
        Contains,
        Bound,
    };

    Op op = Op::Constant;
    std::optional<rdf::Term> constant;  // Constant
    std::string var;                    // Var, Bound
    std::vector<Expression> args;
};

struct PatternNode {
    enum class Kind { Bgp, Filter, Optional, Union, Join };

    Kind kind = Kind::Join;
    std::vector<TriplePatternAst> triples;  // Bgp
    Expression filter;                      // Filter
    // Optional: one child (a Join group); Union: two; Join: the group's
    // elements in order. Filter children of a Join scope over the whole group.
    std::vector<PatternNode> children;
};

enum class QueryForm { Select, Ask };

struct CountAggregate {
    std::optional<std::string> var;  // std::nullopt means COUNT(*)
    bool distinct = false;
    std::string alias;
};

struct OrderCondition {
    Expression expr;
    bool descending = false;
};

struct Query {
    QueryForm form = QueryForm::Select;
    bool select_all = false;              // SELECT *
    std::vector<std::string> projection;  // variable names in order
    std::optional<CountAggregate> count;
    bool distinct = false;
    PatternNode where;
    std::vector<OrderCondition> order_by;
    std::optional<std::size_t> limit;
    std::optional<std::size_t> offset;
    rdf::PrefixMap prefixes;

    // Output variable names: projection, the COUNT alias, or (for SELECT *)
    // every pattern variable in first-appearance order.
    std::vector<std::string> result_variables() const;
};

// Variables of a pattern tree in first-appearance order.
std::vector<std::string> pattern_variables(const PatternNode& node);

} // namespace ontochat::sparql
