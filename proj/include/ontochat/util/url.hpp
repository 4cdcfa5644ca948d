#pragma once
#include <stdexcept>
#include <string>

namespace ontochat {

struct Url {
    std::string scheme;  // "http" or "https"
    std::string host;
    int port = 0;
    std::string path;    // starts with '/', includes any query string

    // "scheme://host:port", the form cpp-httplib's client expects.
    std::string origin() const { return scheme + "://" + host + ":" + std::to_string(port); }
};

// Throws std::invalid_argument for anything but absolute http(s) URLs.
Url parse_url(const std::string& text);

} // namespace ontochat
