#pragma once
#include "ontochat/eval/corpus.hpp"
#include "ontochat/eval/scoring.hpp"
#include "ontochat/fixtures/fixture_set.hpp"
#include "ontochat/llm/provider.hpp"
#include "ontochat/llm/translate.hpp"

#include <nlohmann/json.hpp>

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ontochat::eval {

enum class Cluster { BooleanCountRank, SimpleStringTwoHop, TwoIntent };

inline constexpr Cluster kClusters[] = {Cluster::BooleanCountRank, Cluster::SimpleStringTwoHop, Cluster::TwoIntent};

Cluster cluster_of(Category category);
std::string to_string(Cluster cluster);  // "Boolean, Count, Rank", ...

struct RunOutcome {
    std::string question_id;
    Odp odp = Odp::VDI3682;
    Category category = Category::Boolean;
    Phrasing phrasing = Phrasing::SCQ;
    bool comments = false;
    llm::TranslationResult translation;
    bool correct = false;
    std::optional<FailureKind> failure_kind;
    std::string detail;
};

struct CellKey {
    Cluster cluster = Cluster::BooleanCountRank;
    bool comments = false;
    Phrasing phrasing = Phrasing::SCQ;
    friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct Cell {
    int correct = 0;
    int total = 0;
    int percent = 0;
};

struct RunReport {
    std::string template_version;
    std::vector<RunOutcome> runs;
    std::map<CellKey, Cell> aggregate;
};

// round-half-up(100 * correct / total); 0 when total is 0.
int percent_round_half_up(int correct, int total);

// All 12 (cluster, comments, phrasing) cells, including empty ones.
std::map<CellKey, Cell> aggregate(const std::vector<RunOutcome>& runs);

struct ExperimentOptions {
    int jobs = 1;
    int max_attempts = 3;
};

// Runs every (question, condition) pair in the order odp, category,
// phrasing, condition (without comments first). Provider failures become
// TranslationFailed outcomes; runs may execute in parallel, results are
// stored by run index so the report does not depend on scheduling.
RunReport run_experiment(const ExperimentMatrix& matrix, const fixtures::FixtureSet& fixtures, llm::Provider& provider,
                         const ExperimentOptions& options = {});

std::string condition_label(bool comments);

nlohmann::json to_json(const RunReport& report);

} // namespace ontochat::eval
