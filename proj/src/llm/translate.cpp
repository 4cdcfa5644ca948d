#include "ontochat/llm/translate.hpp"

#include "ontochat/llm/extract.hpp"
#include "ontochat/sparql/parser.hpp"

#include <algorithm>

namespace ontochat::llm {

namespace {

std::string repair_note(const Attempt& previous) {
    std::string note = "Your previous answer could not be used.\n";
    if (previous.extracted_query) {
        note += "Previous query:\n```sparql\n" + *previous.extracted_query + "\n```\n";
    }
    note += "Problem: " + previous.parse_error.value_or("unknown") + "\n";
    note += "Return a corrected query in the same format.\n";
    return note;
}

void check_privacy(const PromptBundle& prompt, const std::vector<std::string>& markers) {
    // The question and the quoted previous query come from the user and the
    // model; only the parts built from the ontology are checked.
    std::string bytes = prompt.system_instructions + prompt.tbox_text;
    for (const auto& m : markers) {
        if (!m.empty() && bytes.find(m) != std::string::npos) throw PrivacyViolation(m);
    }
}

std::optional<std::string> parse_error_of(const std::string& query) {
    try {
        sparql::parse_query(query);
    } catch (const std::exception& e) {
        return std::string(e.what());
    }
    return std::nullopt;
}

} // namespace

TranslationResult translate(const std::string& question, const std::string& tbox_text, Provider& provider,
                            const TranslateOptions& options) {
    TranslationResult result;
    int max_attempts = std::max(1, options.max_attempts);
    for (int n = 1; n <= max_attempts; ++n) {
        PromptBundle prompt = assemble_prompt(tbox_text, question, n == 1 ? std::string() : repair_note(result.attempts.back()));
        check_privacy(prompt, options.privacy_markers);

        Attempt attempt;
        attempt.number = n;
        attempt.prompt_hash = prompt.hash();
        try {
            attempt.raw_response = provider.complete(ProviderRequest{prompt, options.question_id, options.condition, n});
        } catch (const ProviderError& e) {
            result.attempts.push_back(std::move(attempt));
            result.failure = TranslationFailure{TranslationFailureKind::ProviderError, e.what()};
            return result;
        }

        try {
            Extraction ex = extract_queries(attempt.raw_response);
            attempt.extracted_query = std::move(ex.query);
            attempt.extra_blocks = std::move(ex.extra_blocks);
            attempt.parse_error = parse_error_of(*attempt.extracted_query);
        } catch (const NoQueryFound& e) {
            attempt.parse_error = e.what();
        }

        bool ok = !attempt.parse_error;
        result.attempts.push_back(std::move(attempt));
        if (ok) {
            const Attempt& a = result.attempts.back();
            result.final_query = *a.extracted_query;
            result.final_queries.push_back(*a.extracted_query);
            result.final_queries.insert(result.final_queries.end(), a.extra_blocks.begin(), a.extra_blocks.end());
            result.succeeded = true;
            return result;
        }
    }
    result.failure = TranslationFailure{TranslationFailureKind::TranslationFailed,
                                        "no parseable query after " + std::to_string(max_attempts) + " attempt" +
                                            (max_attempts == 1 ? "" : "s") + ": " +
                                            result.attempts.back().parse_error.value_or("")};
    return result;
}

std::string to_string(TranslationFailureKind kind) {
    return kind == TranslationFailureKind::ProviderError ? "ProviderError" : "TranslationFailed";
}

nlohmann::json to_json(const TranslationResult& result) {
    using nlohmann::json;
    json attempts = json::array();
    for (const auto& a : result.attempts) {
        json j = {
            {"number", a.number},
            {"prompt_hash", a.prompt_hash},
            {"raw_response", a.raw_response},
            {"extracted_query", a.extracted_query ? json(*a.extracted_query) : json(nullptr)},
            {"extra_blocks", a.extra_blocks},
            {"parse_error", a.parse_error ? json(*a.parse_error) : json(nullptr)},
        };
        attempts.push_back(std::move(j));
    }
    json out = {
        {"attempts", std::move(attempts)},
        {"final_query", result.final_query ? json(*result.final_query) : json(nullptr)},
        {"final_queries", result.final_queries},
        {"succeeded", result.succeeded},
    };
    if (result.failure) {
        out["failure"] = {{"kind", to_string(result.failure->kind)}, {"detail", result.failure->detail}};
    } else {
        out["failure"] = nullptr;
    }
    return out;
}

} // namespace ontochat::llm
