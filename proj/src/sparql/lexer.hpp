#pragma once
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ontochat::sparql::detail {

struct Token {
    enum class Kind { Iri, PName, Var, String, Integer, Decimal, Double, Word, Punct, End };

    Kind kind = Kind::End;
    std::string text;      // IRI body, prefixed name, var name, string value, number, word, punct
    std::string language;  // String only, from a directly attached @tag
    std::size_t pos = 0;

    bool is_punct(std::string_view p) const { return kind == Kind::Punct && text == p; }
    // Case-insensitive keyword match.
    bool is_word(std::string_view upper) const;
    std::string describe() const;
};

// Throws QuerySyntaxError on malformed tokens.
std::vector<Token> tokenize(std::string_view text);

} // namespace ontochat::sparql::detail
