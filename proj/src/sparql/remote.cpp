#include "ontochat/sparql/remote.hpp"

#include "ontochat/util/url.hpp"

#include <httplib.h>

namespace ontochat::sparql {

ResultSet execute_remote(const std::string& endpoint, const std::string& query, const RemoteOptions& options) {
    Url url;
    try {
        url = parse_url(endpoint);
    } catch (const std::invalid_argument& e) {
        throw EndpointUnreachable(e.what());
    }
    httplib::Client client(url.origin());
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
    auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    httplib::Headers headers = {{"Accept", "application/sparql-results+json"}};
    httplib::Result res;
    if (options.method == HttpMethod::Get) {
        httplib::Params params = {{"query", query}};
        res = client.Get(url.path, params, headers);
    } else {
        httplib::Params params = {{"query", query}};
        res = client.Post(url.path, headers, params);
    }
    if (!res) throw EndpointUnreachable(url.origin() + " (" + httplib::to_string(res.error()) + ")");
    if (res->status < 200 || res->status >= 300) {
        throw EndpointHttpError(res->status, res->body.substr(0, 200));
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedResults(std::string("invalid JSON: ") + e.what());
    }
    return from_sparql_json(doc);
}

} // namespace ontochat::sparql
