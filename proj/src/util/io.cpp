#include "ontochat/util/io.hpp"

#include <fstream>
#include <sstream>

namespace ontochat {

std::string read_file(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw IoError(path, "no such file");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError(path, "write failed");
}

} // namespace ontochat

#include "ontochat/util/url.hpp"

namespace ontochat {

Url parse_url(const std::string& text) {
    Url url;
    auto sep = text.find("://");
    if (sep == std::string::npos) throw std::invalid_argument("not an absolute URL: " + text);
    url.scheme = text.substr(0, sep);
    if (url.scheme != "http" && url.scheme != "https") {
        throw std::invalid_argument("unsupported URL scheme: " + url.scheme);
    }
    std::string rest = text.substr(sep + 3);
    auto slash = rest.find('/');
    std::string authority = rest.substr(0, slash);
    url.path = slash == std::string::npos ? "/" : rest.substr(slash);
    auto colon = authority.rfind(':');
    if (colon != std::string::npos && authority.find(']') == std::string::npos) {
        url.host = authority.substr(0, colon);
        try {
            url.port = std::stoi(authority.substr(colon + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid port in URL: " + text);
        }
    } else {
        url.host = authority;
        url.port = url.scheme == "https" ? 443 : 80;
    }
    if (url.host.empty()) throw std::invalid_argument("URL without host: " + text);
    return url;
}

} // namespace ontochat
