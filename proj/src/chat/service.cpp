#include "ontochat/chat/service.hpp"

#include "ontochat/sparql/evaluator.hpp"
#include "ontochat/sparql/parser.hpp"
#include "ontochat/util/io.hpp"

#include <ctime>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace ontochat::chat {

using nlohmann::json;

std::string to_string(AnswerStatus status) {
    switch (status) {
    case AnswerStatus::Answered: return "Answered";
    case AnswerStatus::EmptyResult: return "EmptyResult";
    case AnswerStatus::TranslationFailed: return "TranslationFailed";
    case AnswerStatus::ExecutionFailed: return "ExecutionFailed";
    }
    return "?";
}

json to_json(const AnswerRecord& record) {
    json additional = json::array();
    for (const auto& rs : record.additional_results) additional.push_back(sparql::to_sparql_json(rs));
    return {
        {"question", record.question},
        {"status", to_string(record.status)},
        {"generated_query", record.translation.final_query ? json(*record.translation.final_query) : json(nullptr)},
        {"generated_queries", record.translation.final_queries},
        {"translation", llm::to_json(record.translation)},
        {"results", record.results ? sparql::to_sparql_json(*record.results) : json(nullptr)},
        {"additional_results", std::move(additional)},
        {"error", record.error.empty() ? json(nullptr) : json(record.error)},
        {"answer_table", record.answer_table},
    };
}

namespace {

sparql::ResultSet execute(const sparql::Query& query, const std::string& text, const LoadedOntology& ontology,
                          const AnswerOptions& options) {
    if (options.remote_endpoint.empty()) return sparql::evaluate(query, ontology.parts.abox);
    return sparql::execute_remote(options.remote_endpoint, text, options.remote);
}

} // namespace

AnswerRecord answer_question(const LoadedOntology& ontology, ontology::CommentPolicy policy, const std::string& question,
                             llm::Provider& provider, const AnswerOptions& options) {
    AnswerRecord record;
    record.question = question;
    llm::TranslateOptions topts;
    topts.max_attempts = options.max_attempts;
    topts.privacy_markers = ontology.privacy_markers;
    record.translation = llm::translate(question, ontology.tbox_text(policy), provider, topts);

    if (!record.translation.succeeded) {
        const auto& failure = record.translation.failure;
        if (failure && failure->kind == llm::TranslationFailureKind::ProviderError) throw llm::ProviderError(failure->detail);
        record.status = AnswerStatus::TranslationFailed;
        record.error = failure ? failure->detail : "translation failed";
        return record;
    }

    try {
        const auto& queries = record.translation.final_queries;
        record.results = execute(sparql::parse_query(queries.front()), queries.front(), ontology, options);
        for (std::size_t i = 1; i < queries.size(); ++i) {
            sparql::Query extra;
            try {
                extra = sparql::parse_query(queries[i]);
            } catch (const std::exception& e) {
                record.error = "query " + std::to_string(i + 1) + " skipped: " + e.what();
                continue;
            }
            record.additional_results.push_back(execute(extra, queries[i], ontology, options));
        }
    } catch (const std::exception& e) {
        record.status = AnswerStatus::ExecutionFailed;
        record.error = e.what();
        record.results.reset();
        record.additional_results.clear();
        return record;
    }

    record.status = record.results->empty() ? AnswerStatus::EmptyResult : AnswerStatus::Answered;
    record.answer_table = sparql::render_table(*record.results);
    for (const auto& rs : record.additional_results) record.answer_table += "\n" + sparql::render_table(rs);
    return record;
}

ChatService::ChatService(const OntologyRegistry& registry, std::shared_ptr<llm::Provider> provider, AnswerOptions options,
                         std::optional<std::filesystem::path> session_log)
    : registry_(registry), provider_(std::move(provider)), options_(std::move(options)),
      session_log_(std::move(session_log)) {}

namespace {

std::string random_id() {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    std::ostringstream out;
    out << std::hex << std::setfill('0') << std::setw(16) << rng() << std::setw(16) << rng();
    return out.str();
}

std::string iso_time(std::chrono::system_clock::time_point t) {
    std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

} // namespace

void ChatService::log_line(const json& line) {
    if (!session_log_) return;
    std::ofstream out(*session_log_, std::ios::app);
    if (!out) throw IoError(*session_log_, "cannot append to session log");
    out << line.dump() << "\n";
}

std::string ChatService::create_session(const std::string& ontology_id, bool comments) {
    registry_.get(ontology_id);
    Session s;
    s.ontology_id = ontology_id;
    s.comment_policy = comments ? ontology::CommentPolicy::Retain : ontology::CommentPolicy::Strip;
    s.created_at = std::chrono::system_clock::now();
    std::lock_guard<std::mutex> lock(mu_);
    do {
        s.id = random_id();
    } while (sessions_.count(s.id));
    log_line({{"event", "session"},
              {"session_id", s.id},
              {"ontology_id", s.ontology_id},
              {"comments", comments},
              {"created_at", iso_time(s.created_at)}});
    std::string id = s.id;
    sessions_.emplace(id, std::move(s));
    return id;
}

AnswerRecord ChatService::ask(const std::string& session_id, const std::string& question) {
    std::string ontology_id;
    ontology::CommentPolicy policy;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = sessions_.find(session_id);
        if (it == sessions_.end()) throw SessionNotFound(session_id);
        ontology_id = it->second.ontology_id;
        policy = it->second.comment_policy;
    }
    AnswerRecord record = answer_question(registry_.get(ontology_id), policy, question, *provider_, options_);
    std::lock_guard<std::mutex> lock(mu_);
    sessions_.at(session_id).history.push_back(record);
    log_line({{"event", "answer"}, {"session_id", session_id}, {"record", to_json(record)}});
    return record;
}

std::vector<AnswerRecord> ChatService::history(const std::string& session_id) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw SessionNotFound(session_id);
    return it->second.history;
}

} // namespace ontochat::chat
