#include "ontochat/chat/http_api.hpp"

#include "ontochat/util/io.hpp"

#include <httplib.h>

#include <iostream>
#include <set>

namespace ontochat::chat {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
    send_json(res, status, {{"error", message}});
}

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
    try {
        json body = json::parse(req.body);
        if (!body.is_object()) {
            send_error(res, 400, "request body must be a JSON object");
            return std::nullopt;
        }
        return body;
    } catch (const json::parse_error&) {
        send_error(res, 400, "request body is not valid JSON");
        return std::nullopt;
    }
}

} // namespace

void register_routes(httplib::Server& server, ChatService& service, const std::optional<std::filesystem::path>& ui_dir) {
    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, {{"status", "ok"}});
    });

    server.Get("/api/ontologies", [&service](const httplib::Request&, httplib::Response& res) {
        json list = json::array();
        for (const auto* o : service.registry().list()) {
            list.push_back({{"id", o->id},
                            {"class_count", o->class_count},
                            {"individual_count", o->individual_count},
                            {"has_comments", o->has_comments}});
        }
        send_json(res, 200, list);
    });

    server.Post("/api/sessions", [&service](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req, res);
        if (!body) return;
        if (!body->contains("ontology_id") || !(*body)["ontology_id"].is_string()) {
            send_error(res, 400, "'ontology_id' (string) is required");
            return;
        }
        bool comments = true;
        if (body->contains("comments")) {
            if (!(*body)["comments"].is_boolean()) {
                send_error(res, 400, "'comments' must be a boolean");
                return;
            }
            comments = (*body)["comments"].get<bool>();
        }
        try {
            std::string id = service.create_session((*body)["ontology_id"].get<std::string>(), comments);
            send_json(res, 200, {{"session_id", id}});
        } catch (const OntologyNotFound& e) {
            send_error(res, 404, e.what());
        }
    });

    server.Post(R"(/api/sessions/([^/]+)/ask)", [&service](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req, res);
        if (!body) return;
        if (!body->contains("question") || !(*body)["question"].is_string()) {
            send_error(res, 400, "'question' (string) is required");
            return;
        }
        try {
            AnswerRecord record = service.ask(req.matches[1], (*body)["question"].get<std::string>());
            send_json(res, 200, to_json(record));
        } catch (const SessionNotFound& e) {
            send_error(res, 404, e.what());
        } catch (const llm::EmptyQuestion& e) {
            send_error(res, 422, e.what());
        } catch (const llm::ProviderError& e) {
            send_error(res, 502, std::string("provider error: ") + e.what());
        }
    });

    server.Get(R"(/api/sessions/([^/]+)/history)", [&service](const httplib::Request& req, httplib::Response& res) {
        try {
            json list = json::array();
            for (const auto& r : service.history(req.matches[1])) list.push_back(to_json(r));
            send_json(res, 200, list);
        } catch (const SessionNotFound& e) {
            send_error(res, 404, e.what());
        }
    });

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            send_error(res, 500, e.what());
        } catch (...) {
            send_error(res, 500, "internal error");
        }
    });

    if (ui_dir) server.set_mount_point("/", ui_dir->string());
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

} // namespace

ServiceConfig load_service_config(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ServiceConfigError(path.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw ServiceConfigError("must be a JSON object");
    std::filesystem::path base = path.parent_path();
    static const std::set<std::string> known = {"ontology_dir", "provider", "endpoint", "host", "port", "max_attempts",
                                                "provider_concurrency", "session_log", "ui_dir"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.count(key)) throw ServiceConfigError("unknown field '" + key + "'");
    }

    ServiceConfig config;
    try {
        if (!doc.contains("ontology_dir")) throw ServiceConfigError("'ontology_dir' is required");
        config.ontology_dir = resolve(base, doc["ontology_dir"].get<std::string>());
        if (!doc.contains("provider")) throw ServiceConfigError("'provider' is required");
        const json& provider = doc["provider"];
        if (provider.is_string()) {
            config.provider = llm::load_provider_config(resolve(base, provider.get<std::string>()));
        } else {
            config.provider = llm::provider_config_from_json(provider, base);
        }
        if (doc.contains("endpoint")) config.endpoint = doc["endpoint"].get<std::string>();
        if (doc.contains("host")) config.host = doc["host"].get<std::string>();
        if (doc.contains("port")) config.port = doc["port"].get<int>();
        if (doc.contains("max_attempts")) config.max_attempts = doc["max_attempts"].get<int>();
        if (doc.contains("provider_concurrency")) config.provider_concurrency = doc["provider_concurrency"].get<int>();
        if (doc.contains("session_log") && !doc["session_log"].is_null()) {
            config.session_log = resolve(base, doc["session_log"].get<std::string>());
        }
        if (doc.contains("ui_dir") && !doc["ui_dir"].is_null()) config.ui_dir = resolve(base, doc["ui_dir"].get<std::string>());
    } catch (const json::type_error& e) {
        throw ServiceConfigError(std::string("wrong field type: ") + e.what());
    }
    if (config.max_attempts < 1) throw ServiceConfigError("'max_attempts' must be at least 1");
    if (config.port < 0 || config.port > 65535) throw ServiceConfigError("'port' out of range");
    return config;
}

bool serve(const ServiceConfig& config) {
    OntologyRegistry registry = OntologyRegistry::load_directory(config.ontology_dir);
    auto provider = std::make_shared<llm::ThrottledProvider>(llm::make_provider(config.provider),
                                                              config.provider_concurrency);
    AnswerOptions options;
    options.max_attempts = config.max_attempts;
    if (config.endpoint != "embedded") options.remote_endpoint = config.endpoint;
    ChatService service(registry, provider, options, config.session_log);

    httplib::Server server;
    register_routes(server, service, config.ui_dir);
    std::cerr << "serving " << registry.list().size() << " ontologies on http://" << config.host << ":" << config.port
              << "\n";
    return server.listen(config.host, config.port);
}

} // namespace ontochat::chat
