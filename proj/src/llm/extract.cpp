#include "ontochat/llm/extract.hpp"

#include <cctype>
#include <regex>

namespace ontochat::llm {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> fenced_blocks(std::string_view text) {
    std::vector<std::string> blocks;
    std::size_t pos = 0;
    while (true) {
        std::size_t open = text.find("```", pos);
        if (open == std::string_view::npos) break;
        std::size_t body = text.find('\n', open);
        if (body == std::string_view::npos) break;
        ++body;
        std::size_t close = text.find("```", body);
        std::string content = trim(text.substr(body, close == std::string_view::npos ? std::string_view::npos : close - body));
        if (!content.empty()) blocks.push_back(std::move(content));
        if (close == std::string_view::npos) break;
        pos = close + 3;
    }
    return blocks;
}

bool word_boundary(std::string_view text, std::size_t at, std::size_t len) {
    auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    if (at > 0 && is_word(text[at - 1])) return false;
    return at + len >= text.size() || !is_word(text[at + len]);
}

std::size_t first_keyword(std::string_view text) {
    std::size_t best = std::string_view::npos;
    for (std::string_view kw : {"PREFIX", "SELECT", "ASK"}) {
        std::size_t at = text.find(kw);
        while (at != std::string_view::npos && !word_boundary(text, at, kw.size())) at = text.find(kw, at + 1);
        if (at < best) best = at;
    }
    return best;
}

std::string unfenced_query(std::string_view text) {
    std::size_t start = first_keyword(text);
    if (start == std::string_view::npos) throw NoQueryFound();
    std::string_view rest = text.substr(start);
    std::size_t brace = rest.rfind('}');
    if (brace == std::string_view::npos) return trim(rest);
    std::string tail(rest.substr(brace + 1));
    static const std::regex modifier(
        R"(^\s*(ORDER\s+BY(\s*(ASC|DESC)\s*\(\s*\?\w+\s*\)|\s*\?\w+)+|LIMIT\s+\d+|OFFSET\s+\d+))",
        std::regex::icase);
    std::size_t keep = 0;
    std::smatch m;
    std::string remaining = tail;
    while (std::regex_search(remaining, m, modifier)) {
        keep += static_cast<std::size_t>(m.length(0));
        remaining = remaining.substr(static_cast<std::size_t>(m.length(0)));
    }
    return trim(rest.substr(0, brace + 1 + keep));
}

} // namespace

Extraction extract_queries(std::string_view raw_response) {
    Extraction out;
    auto blocks = fenced_blocks(raw_response);
    if (!blocks.empty()) {
        out.query = std::move(blocks.front());
        out.extra_blocks.assign(std::make_move_iterator(blocks.begin() + 1), std::make_move_iterator(blocks.end()));
        return out;
    }
    out.query = unfenced_query(raw_response);
    return out;
}

std::string extract_query(std::string_view raw_response) { return extract_queries(raw_response).query; }

} // namespace ontochat::llm
