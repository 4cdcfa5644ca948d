#pragma once
#include "ontochat/sparql/ast.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontochat::eval {

enum class Odp { VDI3682, DINEN61360, VDI2206 };
enum class Category { Boolean, Count, Rank, Simple, String, TwoHop, TwoIntent };
enum class Phrasing { SCQ, NSCQ };

inline constexpr Odp kOdps[] = {Odp::VDI3682, Odp::DINEN61360, Odp::VDI2206};
inline constexpr Category kCategories[] = {Category::Boolean, Category::Count,  Category::Rank,     Category::Simple,
                                           Category::String,  Category::TwoHop, Category::TwoIntent};
inline constexpr Phrasing kPhrasings[] = {Phrasing::SCQ, Phrasing::NSCQ};

std::string to_string(Odp odp);
std::string to_string(Category category);
std::string to_string(Phrasing phrasing);
std::optional<Odp> parse_odp(const std::string& s);
std::optional<Category> parse_category(const std::string& s);
std::optional<Phrasing> parse_phrasing(const std::string& s);

struct QuestionRecord {
    std::string id;
    Odp odp = Odp::VDI3682;
    Category category = Category::Boolean;
    Phrasing phrasing = Phrasing::SCQ;
    std::string text;
    std::vector<std::string> gold_queries;
    std::vector<sparql::Query> gold_parsed;
};

struct Condition {
    bool comments = false;
};

struct ExperimentMatrix {
    std::vector<Condition> conditions{{false}, {true}};
    std::vector<QuestionRecord> corpus;

    std::size_t run_count() const { return conditions.size() * corpus.size(); }
};

struct CorpusViolation {
    std::string record_id;
    std::string reason;
};

class CorpusInvalid : public std::runtime_error {
public:
    explicit CorpusInvalid(std::vector<CorpusViolation> violations);
    const std::vector<CorpusViolation>& violations() const { return violations_; }

private:
    std::vector<CorpusViolation> violations_;
};

// Local names of each ODP's classes and properties.
using Vocabulary = std::map<Odp, std::set<std::string>>;

// Validates shape (7 categories x 2 phrasings per ODP), gold query count
// and syntax, unique texts, and phrasing rules: an NSCQ must not contain
// any local name of its ODP (case-sensitive substring); an SCQ must use at
// least one vocabulary word of four or more letters (case-insensitive,
// camelCase split). Every violation is collected into one CorpusInvalid.
ExperimentMatrix parse_corpus(const nlohmann::json& doc, const Vocabulary& vocabulary);
ExperimentMatrix load_corpus(const std::filesystem::path& path, const Vocabulary& vocabulary);

} // namespace ontochat::eval
