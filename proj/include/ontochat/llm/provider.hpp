#pragma once
#include "ontochat/llm/prompt.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <semaphore>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontochat::llm {

// Network, auth or lookup failure of a provider; distinct from a response
// that merely fails to contain a usable query.
class ProviderError : public std::runtime_error {
public:
    explicit ProviderError(const std::string& detail) : std::runtime_error(detail) {}
};

class ProviderConfigError : public std::runtime_error {
public:
    explicit ProviderConfigError(const std::string& what) : std::runtime_error("provider config: " + what) {}
};

struct ProviderRequest {
    const PromptBundle& prompt;
    std::string question_id;  // empty outside the experiment
    std::string condition;    // experiment condition label, e.g. "commented"
    int attempt = 1;
};

// Implementations must be safe to call from several threads at once.
class Provider {
public:
    virtual ~Provider() = default;
    virtual std::string complete(const ProviderRequest& request) = 0;
};

// Echoes canned queries. Lookup is by question id first, then by the exact
// question text. Each query is wrapped in its own ```sparql fence.
class MockProvider : public Provider {
public:
    explicit MockProvider(std::map<std::string, std::vector<std::string>> mapping);
    // JSON object: key -> query text, or key -> array of query texts.
    static MockProvider from_json(const nlohmann::json& doc);
    std::string complete(const ProviderRequest& request) override;

private:
    std::map<std::string, std::vector<std::string>> mapping_;
};

struct CassetteEntry {
    std::string prompt_hash;
    std::string response_text;
};

// Answers from recorded responses keyed by prompt hash; a miss is a
// ProviderError, never a live call.
class ReplayProvider : public Provider {
public:
    explicit ReplayProvider(const std::vector<CassetteEntry>& entries);
    std::string complete(const ProviderRequest& request) override;

private:
    std::map<std::string, std::string> by_hash_;
};

std::vector<CassetteEntry> cassette_from_json(const nlohmann::json& doc);
// Entries sorted by hash so the file is independent of run order.
nlohmann::json cassette_to_json(std::vector<CassetteEntry> entries);

// Delegates to a callback; used for tests and cassette authoring.
class ScriptedProvider : public Provider {
public:
    using Script = std::function<std::string(const ProviderRequest&)>;
    explicit ScriptedProvider(Script script) : script_(std::move(script)) {}
    std::string complete(const ProviderRequest& request) override { return script_(request); }

private:
    Script script_;
};

// Passes calls through and records every (prompt hash, response) pair.
class RecordingProvider : public Provider {
public:
    explicit RecordingProvider(std::shared_ptr<Provider> inner) : inner_(std::move(inner)) {}
    std::string complete(const ProviderRequest& request) override;
    std::vector<CassetteEntry> entries() const;

private:
    std::shared_ptr<Provider> inner_;
    mutable std::mutex mu_;
    std::vector<CassetteEntry> entries_;
};

// Caps the number of concurrent calls into the wrapped provider.
class ThrottledProvider : public Provider {
public:
    ThrottledProvider(std::shared_ptr<Provider> inner, int max_concurrent);
    std::string complete(const ProviderRequest& request) override;

private:
    std::shared_ptr<Provider> inner_;
    std::counting_semaphore<> slots_;
};

enum class ProviderKind { HttpChat, Mock, Replay };

struct ProviderConfig {
    ProviderKind kind = ProviderKind::Mock;
    double temperature = 0.0;
    // HttpChat
    std::string endpoint;
    std::string model;
    std::string auth_header = "Authorization";
    std::string auth_env;  // name of the environment variable holding the secret
    int timeout_ms = 60000;
    // Mock
    std::filesystem::path mapping_path;
    // Replay
    std::filesystem::path cassette_path;
};

// Relative paths resolve against base_dir. Fields of other kinds and
// unknown fields are rejected.
ProviderConfig provider_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ProviderConfig load_provider_config(const std::filesystem::path& path);

// OpenAI-style chat completion over HTTP(S).
class HttpChatProvider : public Provider {
public:
    explicit HttpChatProvider(ProviderConfig config);
    std::string complete(const ProviderRequest& request) override;

private:
    ProviderConfig config_;
};

std::shared_ptr<Provider> make_provider(const ProviderConfig& config);

} // namespace ontochat::llm
