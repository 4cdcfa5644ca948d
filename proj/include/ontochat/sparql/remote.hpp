#pragma once
#include "ontochat/sparql/results.hpp"

#include <chrono>
#include <stdexcept>
#include <string>

namespace ontochat::sparql {

class EndpointUnreachable : public std::runtime_error {
public:
    explicit EndpointUnreachable(const std::string& what) : std::runtime_error("endpoint unreachable: " + what) {}
};

class EndpointHttpError : public std::runtime_error {
public:
    EndpointHttpError(int status, const std::string& body)
        : std::runtime_error("endpoint returned HTTP " + std::to_string(status) + (body.empty() ? "" : ": " + body)),
          status_(status) {}
    int status() const { return status_; }

private:
    int status_;
};

enum class HttpMethod { Get, Post };

struct RemoteOptions {
    std::chrono::milliseconds timeout{10000};
    HttpMethod method = HttpMethod::Post;
};

// SPARQL 1.1 Protocol query. Throws EndpointUnreachable, EndpointHttpError
// or MalformedResults.
ResultSet execute_remote(const std::string& endpoint, const std::string& query, const RemoteOptions& options = {});

} // namespace ontochat::sparql
