#include "ontochat/eval/scoring.hpp"

#include "ontochat/sparql/evaluator.hpp"
#include "ontochat/sparql/parser.hpp"

namespace ontochat::eval {

std::string to_string(FailureKind kind) {
    switch (kind) {
    case FailureKind::TranslationFailed: return "TranslationFailed";
    case FailureKind::WrongAnswer: return "WrongAnswer";
    case FailureKind::ExecutionError: return "ExecutionError";
    }
    return "?";
}

Score score_run(const std::vector<std::string>& generated, const QuestionRecord& record, const rdf::Graph& abox) {
    if (generated.empty()) return {false, FailureKind::TranslationFailed, "no generated query"};
    std::size_t considered = record.category == Category::TwoIntent ? generated.size() : 1;

    std::vector<sparql::Query> queries;
    for (std::size_t i = 0; i < considered; ++i) {
        try {
            queries.push_back(sparql::parse_query(generated[i]));
        } catch (const std::exception& e) {
            return {false, FailureKind::TranslationFailed, "generated query " + std::to_string(i + 1) + ": " + e.what()};
        }
    }

    std::vector<sparql::ResultSet> got;
    std::vector<sparql::ResultSet> want;
    try {
        for (const auto& q : queries) got.push_back(sparql::evaluate(q, abox));
        for (const auto& q : record.gold_parsed) want.push_back(sparql::evaluate(q, abox));
    } catch (const std::exception& e) {
        return {false, FailureKind::ExecutionError, e.what()};
    }

    bool ordered = record.category == Category::Rank;
    if (got.size() != want.size()) {
        return {false, FailureKind::WrongAnswer,
                std::to_string(got.size()) + " generated queries for " + std::to_string(want.size()) + " intents"};
    }
    bool equal = false;
    if (want.size() == 1) {
        equal = sparql::results_equal(got[0], want[0], ordered);
    } else if (want.size() == 2) {
        equal = (sparql::results_equal(got[0], want[0], ordered) && sparql::results_equal(got[1], want[1], ordered)) ||
                (sparql::results_equal(got[0], want[1], ordered) && sparql::results_equal(got[1], want[0], ordered));
    }
    if (!equal) return {false, FailureKind::WrongAnswer, "result differs from gold"};
    return {true, std::nullopt, {}};
}

} // namespace ontochat::eval
