#pragma once
#include "ontochat/chat/registry.hpp"
#include "ontochat/llm/provider.hpp"
#include "ontochat/llm/translate.hpp"
#include "ontochat/sparql/remote.hpp"
#include "ontochat/sparql/results.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontochat::chat {

enum class AnswerStatus { Answered, EmptyResult, TranslationFailed, ExecutionFailed };

std::string to_string(AnswerStatus status);

struct AnswerRecord {
    std::string question;
    AnswerStatus status = AnswerStatus::TranslationFailed;
    llm::TranslationResult translation;
    std::optional<sparql::ResultSet> results;
    // Results of further queries of the accepted response (one per intent).
    std::vector<sparql::ResultSet> additional_results;
    std::string error;
    std::string answer_table;
};

// Deterministic: no timestamps or session data.
nlohmann::json to_json(const AnswerRecord& record);

struct AnswerOptions {
    int max_attempts = 3;
    // Empty: evaluate on the ontology's ABox in process.
    std::string remote_endpoint;
    sparql::RemoteOptions remote;
};

// One pass of the pipeline: render the TBox under the policy, translate,
// execute on the ABox (or the remote endpoint) and record everything.
// Domain failures become statuses; llm::ProviderError is rethrown.
AnswerRecord answer_question(const LoadedOntology& ontology, ontology::CommentPolicy policy, const std::string& question,
                             llm::Provider& provider, const AnswerOptions& options = {});

class SessionNotFound : public std::runtime_error {
public:
    explicit SessionNotFound(const std::string& id) : std::runtime_error("unknown session '" + id + "'") {}
};

struct Session {
    std::string id;
    std::string ontology_id;
    ontology::CommentPolicy comment_policy = ontology::CommentPolicy::Retain;
    std::chrono::system_clock::time_point created_at;
    std::vector<AnswerRecord> history;
};

class ChatService {
public:
    // session_log, if set, receives one JSON line per created session and
    // per answer.
    ChatService(const OntologyRegistry& registry, std::shared_ptr<llm::Provider> provider, AnswerOptions options = {},
                std::optional<std::filesystem::path> session_log = std::nullopt);

    const OntologyRegistry& registry() const { return registry_; }

    // Throws OntologyNotFound.
    std::string create_session(const std::string& ontology_id, bool comments);
    // Throws SessionNotFound, llm::EmptyQuestion, llm::ProviderError.
    AnswerRecord ask(const std::string& session_id, const std::string& question);
    std::vector<AnswerRecord> history(const std::string& session_id) const;

private:
    void log_line(const nlohmann::json& line);

    const OntologyRegistry& registry_;
    std::shared_ptr<llm::Provider> provider_;
    AnswerOptions options_;
    std::optional<std::filesystem::path> session_log_;
    mutable std::mutex mu_;
    std::map<std::string, Session> sessions_;
};

} // namespace ontochat::chat
