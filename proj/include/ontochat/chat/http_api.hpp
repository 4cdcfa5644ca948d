#pragma once
#include "ontochat/chat/service.hpp"
#include "ontochat/llm/provider.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace httplib {
class Server;
}

namespace ontochat::chat {

class ServiceConfigError : public std::runtime_error {
public:
    explicit ServiceConfigError(const std::string& what) : std::runtime_error("service config: " + what) {}
};

struct ServiceConfig {
    std::filesystem::path ontology_dir;
    llm::ProviderConfig provider;
    std::string endpoint = "embedded";  // or an http(s) SPARQL endpoint URL
    std::string host = "127.0.0.1";
    int port = 8080;
    int max_attempts = 3;
    int provider_concurrency = 4;
    std::optional<std::filesystem::path> session_log;
    std::optional<std::filesystem::path> ui_dir;
};

// Relative paths resolve against the config file's directory. "provider"
// may be a path to a provider config or an inline provider object.
ServiceConfig load_service_config(const std::filesystem::path& path);

// Installs the JSON API routes (and static UI files if ui_dir is set).
void register_routes(httplib::Server& server, ChatService& service,
                     const std::optional<std::filesystem::path>& ui_dir = std::nullopt);

// Loads everything and blocks serving requests. Returns false if the
// socket could not be bound.
bool serve(const ServiceConfig& config);

} // namespace ontochat::chat
