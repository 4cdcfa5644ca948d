#pragma once
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ontochat::llm {

class NoQueryFound : public std::runtime_error {
public:
    NoQueryFound() : std::runtime_error("no SPARQL query found in the response") {}
};

struct Extraction {
    std::string query;                      // first fenced block, or the unfenced query
    std::vector<std::string> extra_blocks;  // further fenced blocks, in order
};

// Fenced code blocks win; the first one is the query. Without a fence the
// text from the first PREFIX/SELECT/ASK keyword is taken, with prose after
// the final '}' and its solution modifiers trimmed. Throws NoQueryFound.
Extraction extract_queries(std::string_view raw_response);

std::string extract_query(std::string_view raw_response);

} // namespace ontochat::llm
