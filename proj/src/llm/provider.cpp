#include "ontochat/llm/provider.hpp"

#include "ontochat/util/io.hpp"
#include "ontochat/util/url.hpp"

#include <httplib.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <tuple>

namespace ontochat::llm {

using nlohmann::json;

MockProvider::MockProvider(std::map<std::string, std::vector<std::string>> mapping) : mapping_(std::move(mapping)) {}

MockProvider MockProvider::from_json(const json& doc) {
    if (!doc.is_object()) throw ProviderConfigError("mock mapping must be a JSON object");
    std::map<std::string, std::vector<std::string>> mapping;
    for (const auto& [key, value] : doc.items()) {
        std::vector<std::string> queries;
        if (value.is_string()) {
            queries.push_back(value.get<std::string>());
        } else if (value.is_array() && !value.empty() &&
                   std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_string(); })) {
            for (const auto& v : value) queries.push_back(v.get<std::string>());
        } else {
            throw ProviderConfigError("mock entry '" + key + "' must be a string or an array of strings");
        }
        mapping.emplace(key, std::move(queries));
    }
    return MockProvider(std::move(mapping));
}

std::string MockProvider::complete(const ProviderRequest& request) {
    auto it = request.question_id.empty() ? mapping_.end() : mapping_.find(request.question_id);
    if (it == mapping_.end()) it = mapping_.find(request.prompt.question);
    if (it == mapping_.end()) {
        throw ProviderError("mock provider has no entry for question '" +
                            (request.question_id.empty() ? request.prompt.question : request.question_id) + "'");
    }
    std::string out;
    for (const auto& q : it->second) {
        if (!out.empty()) out += "\n";
        out += "```sparql\n" + q + "\n```\n";
    }
    return out;
}

ReplayProvider::ReplayProvider(const std::vector<CassetteEntry>& entries) {
    for (const auto& e : entries) {
        auto [it, inserted] = by_hash_.emplace(e.prompt_hash, e.response_text);
        if (!inserted && it->second != e.response_text) {
            throw ProviderConfigError("cassette has conflicting responses for prompt " + e.prompt_hash);
        }
    }
}

std::string ReplayProvider::complete(const ProviderRequest& request) {
    std::string hash = request.prompt.hash();
    auto it = by_hash_.find(hash);
    if (it == by_hash_.end()) throw ProviderError("replay cassette has no response for prompt " + hash);
    return it->second;
}

std::vector<CassetteEntry> cassette_from_json(const json& doc) {
    if (!doc.is_array()) throw ProviderConfigError("cassette must be a JSON array");
    std::vector<CassetteEntry> entries;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("prompt_hash") || !item.contains("response_text") ||
            !item["prompt_hash"].is_string() || !item["response_text"].is_string()) {
            throw ProviderConfigError("cassette entries need string fields prompt_hash and response_text");
        }
        entries.push_back({item["prompt_hash"].get<std::string>(), item["response_text"].get<std::string>()});
    }
    return entries;
}

json cassette_to_json(std::vector<CassetteEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const CassetteEntry& a, const CassetteEntry& b) {
        return std::tie(a.prompt_hash, a.response_text) < std::tie(b.prompt_hash, b.response_text);
    });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const CassetteEntry& a, const CassetteEntry& b) {
                                  return a.prompt_hash == b.prompt_hash && a.response_text == b.response_text;
                              }),
                  entries.end());
    json out = json::array();
    for (const auto& e : entries) out.push_back({{"prompt_hash", e.prompt_hash}, {"response_text", e.response_text}});
    return out;
}

std::string RecordingProvider::complete(const ProviderRequest& request) {
    std::string response = inner_->complete(request);
    std::lock_guard<std::mutex> lock(mu_);
    entries_.push_back({request.prompt.hash(), response});
    return response;
}

std::vector<CassetteEntry> RecordingProvider::entries() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_;
}

ThrottledProvider::ThrottledProvider(std::shared_ptr<Provider> inner, int max_concurrent)
    : inner_(std::move(inner)), slots_(std::max(1, max_concurrent)) {}

std::string ThrottledProvider::complete(const ProviderRequest& request) {
    slots_.acquire();
    struct Release {
        std::counting_semaphore<>& s;
        ~Release() { s.release(); }
    } release{slots_};
    return inner_->complete(request);
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::string string_field(const json& doc, const char* name) {
    const auto& v = doc.at(name);
    if (!v.is_string()) throw ProviderConfigError(std::string("'") + name + "' must be a string");
    return v.get<std::string>();
}

} // namespace

ProviderConfig provider_config_from_json(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw ProviderConfigError("must be a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string()) throw ProviderConfigError("missing 'kind'");
    std::string kind = doc["kind"].get<std::string>();
    static const std::map<std::string, std::set<std::string>> allowed = {
        {"http_chat", {"kind", "temperature", "endpoint", "model", "auth_header", "auth_env", "timeout_ms"}},
        {"mock", {"kind", "temperature", "mapping"}},
        {"replay", {"kind", "temperature", "cassette"}},
    };
    auto fields = allowed.find(kind);
    if (fields == allowed.end()) throw ProviderConfigError("unknown kind '" + kind + "' (http_chat, mock, replay)");
    for (const auto& [key, value] : doc.items()) {
        if (!fields->second.count(key)) {
            throw ProviderConfigError("field '" + key + "' is not valid for kind '" + kind + "'");
        }
    }

    ProviderConfig config;
    if (doc.contains("temperature")) {
        if (!doc["temperature"].is_number()) throw ProviderConfigError("'temperature' must be a number");
        config.temperature = doc["temperature"].get<double>();
    }
    if (kind == "mock") {
        config.kind = ProviderKind::Mock;
        if (!doc.contains("mapping")) throw ProviderConfigError("mock needs 'mapping'");
        config.mapping_path = resolve(base_dir, string_field(doc, "mapping"));
    } else if (kind == "replay") {
        config.kind = ProviderKind::Replay;
        if (!doc.contains("cassette")) throw ProviderConfigError("replay needs 'cassette'");
        config.cassette_path = resolve(base_dir, string_field(doc, "cassette"));
    } else {
        config.kind = ProviderKind::HttpChat;
        if (!doc.contains("endpoint") || !doc.contains("model")) {
            throw ProviderConfigError("http_chat needs 'endpoint' and 'model'");
        }
        config.endpoint = string_field(doc, "endpoint");
        config.model = string_field(doc, "model");
        if (doc.contains("auth_header")) config.auth_header = string_field(doc, "auth_header");
        if (doc.contains("auth_env")) config.auth_env = string_field(doc, "auth_env");
        if (doc.contains("timeout_ms")) {
            if (!doc["timeout_ms"].is_number_integer()) throw ProviderConfigError("'timeout_ms' must be an integer");
            config.timeout_ms = doc["timeout_ms"].get<int>();
        }
        try {
            parse_url(config.endpoint);
        } catch (const std::invalid_argument& e) {
            throw ProviderConfigError(e.what());
        }
    }
    return config;
}

ProviderConfig load_provider_config(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ProviderConfigError(path.string() + ": " + e.what());
    }
    return provider_config_from_json(doc, path.parent_path());
}

HttpChatProvider::HttpChatProvider(ProviderConfig config) : config_(std::move(config)) {}

std::string HttpChatProvider::complete(const ProviderRequest& request) {
    Url url = parse_url(config_.endpoint);
    httplib::Client client(url.origin());
    auto secs = config_.timeout_ms / 1000;
    auto usecs = (config_.timeout_ms % 1000) * 1000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);

    httplib::Headers headers;
    if (!config_.auth_env.empty()) {
        const char* secret = std::getenv(config_.auth_env.c_str());
        if (!secret || !*secret) throw ProviderError("environment variable " + config_.auth_env + " is not set");
        std::string value = secret;
        if (config_.auth_header == "Authorization") value = "Bearer " + value;
        headers.emplace(config_.auth_header, value);
    }
    json body = {
        {"model", config_.model},
        {"temperature", config_.temperature},
        {"messages", json::array({
                         {{"role", "system"}, {"content", request.prompt.system_instructions}},
                         {{"role", "user"}, {"content", request.prompt.render_user()}},
                     })},
    };
    auto res = client.Post(url.path, headers, body.dump(), "application/json");
    if (!res) throw ProviderError("chat endpoint unreachable: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) {
        throw ProviderError("chat endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    }
    try {
        json doc = json::parse(res->body);
        return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw ProviderError(std::string("unexpected chat completion response: ") + e.what());
    }
}

std::shared_ptr<Provider> make_provider(const ProviderConfig& config) {
    auto parse = [](const std::filesystem::path& path) {
        try {
            return json::parse(read_file(path));
        } catch (const json::parse_error& e) {
            throw ProviderConfigError(path.string() + ": " + e.what());
        }
    };
    switch (config.kind) {
    case ProviderKind::Mock:
        return std::make_shared<MockProvider>(MockProvider::from_json(parse(config.mapping_path)));
    case ProviderKind::Replay:
        return std::make_shared<ReplayProvider>(cassette_from_json(parse(config.cassette_path)));
    case ProviderKind::HttpChat:
        return std::make_shared<HttpChatProvider>(config);
    }
    throw ProviderConfigError("unknown provider kind");
}

} // namespace ontochat::llm
