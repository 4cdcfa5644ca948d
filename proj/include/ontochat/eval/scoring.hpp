#pragma once
#include "ontochat/eval/corpus.hpp"
#include "ontochat/rdf/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ontochat::eval {

enum class FailureKind { TranslationFailed, WrongAnswer, ExecutionError };

std::string to_string(FailureKind kind);

struct Score {
    bool correct = false;
    std::optional<FailureKind> failure;
    std::string detail;
};

// Answer equivalence against the record's gold queries on the given ABox.
// Only the first generated query counts, except for TwoIntent, where all
// generated queries are paired with the two gold queries (either order).
// An empty generated result against a non-empty gold result is a wrong
// answer like any other mismatch.
Score score_run(const std::vector<std::string>& generated, const QuestionRecord& record, const rdf::Graph& abox);

} // namespace ontochat::eval
