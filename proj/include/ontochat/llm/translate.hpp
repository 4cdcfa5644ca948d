#pragma once
#include "ontochat/llm/provider.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontochat::llm {

// The schema part of a prompt (instructions and TBox) names an ABox
// individual. This is an integrity failure of the pipeline, not a
// translation outcome.
class PrivacyViolation : public std::logic_error {
public:
    explicit PrivacyViolation(const std::string& marker)
        : std::logic_error("prompt would disclose individual " + marker), marker_(marker) {}
    const std::string& marker() const { return marker_; }

private:
    std::string marker_;
};

struct Attempt {
    int number = 1;
    std::string prompt_hash;
    std::string raw_response;
    std::optional<std::string> extracted_query;
    std::vector<std::string> extra_blocks;
    std::optional<std::string> parse_error;
};

enum class TranslationFailureKind { ProviderError, TranslationFailed };

struct TranslationFailure {
    TranslationFailureKind kind = TranslationFailureKind::TranslationFailed;
    std::string detail;
};

struct TranslationResult {
    std::vector<Attempt> attempts;
    std::optional<std::string> final_query;
    // The first query plus any further blocks of the accepted response
    // (one per intent), verbatim.
    std::vector<std::string> final_queries;
    bool succeeded = false;
    std::optional<TranslationFailure> failure;
};

struct TranslateOptions {
    int max_attempts = 3;
    std::string question_id;
    std::string condition;
    // Strings that must not occur in any prompt.
    std::vector<std::string> privacy_markers;
};

// Bounded repair loop: stops at the first response whose first query
// parses. Later attempts carry the previous query and its error. Provider
// failures end the loop with a ProviderError failure. Throws EmptyQuestion
// and PrivacyViolation.
TranslationResult translate(const std::string& question, const std::string& tbox_text, Provider& provider,
                            const TranslateOptions& options = {});

nlohmann::json to_json(const TranslationResult& result);

std::string to_string(TranslationFailureKind kind);

} // namespace ontochat::llm
