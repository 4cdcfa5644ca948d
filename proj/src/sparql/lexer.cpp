#include "lexer.hpp"

#include "ontochat/sparql/ast.hpp"
#include "ontochat/util/utf8.hpp"

#include <cctype>

namespace ontochat::sparql::detail {

namespace {

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }
bool is_name_start(char c) { return is_alpha(c) || is_high(c) || c == '_'; }
bool is_name_char(char c) { return is_name_start(c) || is_digit(c) || c == '-'; }

bool is_iri_char(char c) {
    if (static_cast<unsigned char>(c) <= 0x20) return false;
    switch (c) {
    case '<': case '>': case '"': case '{': case '}': case '|': case '^': case '`': case '\\':
        return false;
    default:
        return true;
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : src_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_ws();
            Token t;
            t.pos = pos_;
            if (pos_ >= src_.size()) {
                t.kind = Token::Kind::End;
                out.push_back(std::move(t));
                return out;
            }
            lex_one(t);
            out.push_back(std::move(t));
        }
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = pos_ < src_.size() ? std::string(1, src_[pos_]) : "end of query";
        throw QuerySyntaxError(pos_, expected, found);
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    void lex_one(Token& t) {
        char c = peek();
        if (c == '<' && try_iri(t)) return;
        if ((c == '?' || c == '$') && is_name_char(peek(1))) {
            ++pos_;
            t.kind = Token::Kind::Var;
            while (is_name_char(peek())) t.text.push_back(src_[pos_++]);
            return;
        }
        if (c == '"' || c == '\'') {
            lex_string(t);
            return;
        }
        if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
            lex_number(t);
            return;
        }
        if (is_name_start(c) || c == ':') {
            lex_name(t);
            return;
        }
        static constexpr std::string_view kTwo[] = {"&&", "||", "!=", "<=", ">=", "^^"};
        for (auto p : kTwo) {
            if (src_.substr(pos_, 2) == p) {
                t.kind = Token::Kind::Punct;
                t.text = std::string(p);
                pos_ += 2;
                return;
            }
        }
        static constexpr std::string_view kOne = "{}().;,*=!<>/|^+-[]?@";
        if (kOne.find(c) != std::string_view::npos) {
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, c);
            ++pos_;
            return;
        }
        fail("a SPARQL token");
    }

    bool try_iri(Token& t) {
        std::size_t end = pos_ + 1;
        while (end < src_.size() && is_iri_char(src_[end])) ++end;
        if (end >= src_.size() || src_[end] != '>') return false;
        t.kind = Token::Kind::Iri;
        t.text = std::string(src_.substr(pos_ + 1, end - pos_ - 1));
        pos_ = end + 1;
        return true;
    }

    void append_hex(std::string& out, int digits) {
        char32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            char h = peek();
            if (!std::isxdigit(static_cast<unsigned char>(h))) fail("a hexadecimal digit in unicode escape");
            ++pos_;
            cp = cp * 16 + static_cast<char32_t>(is_digit(h) ? h - '0' : std::tolower(h) - 'a' + 10);
        }
        if (!append_utf8(out, cp)) fail("a valid code point");
    }

    void lex_string(Token& t) {
        t.kind = Token::Kind::String;
        char q = src_[pos_++];
        bool long_form = peek() == q && peek(1) == q;
        if (long_form) {
            pos_ += 2;
        } else if (peek() == q) {
            ++pos_;
            lex_lang(t);
            return;
        }
        for (;;) {
            if (pos_ >= src_.size()) fail("closing quote of string literal");
            char c = src_[pos_];
            if (long_form && c == q && peek(1) == q && peek(2) == q) {
                pos_ += 3;
                break;
            }
            if (!long_form && c == q) {
                ++pos_;
                break;
            }
            if (!long_form && (c == '\n' || c == '\r')) fail("closing quote before line break");
            ++pos_;
            if (c != '\\') {
                t.text.push_back(c);
                continue;
            }
            char e = peek();
            ++pos_;
            switch (e) {
            case 't': t.text.push_back('\t'); break;
            case 'b': t.text.push_back('\b'); break;
            case 'n': t.text.push_back('\n'); break;
            case 'r': t.text.push_back('\r'); break;
            case 'f': t.text.push_back('\f'); break;
            case '"': t.text.push_back('"'); break;
            case '\'': t.text.push_back('\''); break;
            case '\\': t.text.push_back('\\'); break;
            case 'u': append_hex(t.text, 4); break;
            case 'U': append_hex(t.text, 8); break;
            default: --pos_; fail("a valid string escape");
            }
        }
        lex_lang(t);
    }

    void lex_lang(Token& t) {
        if (peek() != '@' || !is_alpha(peek(1))) return;
        ++pos_;
        while (is_alpha(peek()) || (peek() == '-' && (is_alpha(peek(1)) || is_digit(peek(1)))) ||
               (is_digit(peek()) && !t.language.empty())) {
            t.language.push_back(src_[pos_++]);
        }
    }

    void lex_number(Token& t) {
        t.kind = Token::Kind::Integer;
        while (is_digit(peek())) t.text.push_back(src_[pos_++]);
        if (peek() == '.' && is_digit(peek(1))) {
            t.kind = Token::Kind::Decimal;
            t.text.push_back(src_[pos_++]);
            while (is_digit(peek())) t.text.push_back(src_[pos_++]);
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t k = (peek(1) == '+' || peek(1) == '-') ? 2 : 1;
            if (is_digit(peek(k))) {
                t.kind = Token::Kind::Double;
                for (std::size_t i = 0; i < k; ++i) t.text.push_back(src_[pos_++]);
                while (is_digit(peek())) t.text.push_back(src_[pos_++]);
            }
        }
    }

    void lex_name(Token& t) {
        t.kind = Token::Kind::Word;
        while (is_name_char(peek()) || (peek() == '.' && is_name_char(peek(1)))) {
            t.text.push_back(src_[pos_++]);
        }
        if (peek() != ':') return;
        t.kind = Token::Kind::PName;
        t.text.push_back(src_[pos_++]);
        for (;;) {
            char c = peek();
            if (is_name_char(c) || c == ':' || c == '%' || (c == '.' && (is_name_char(peek(1)) || peek(1) == ':'))) {
                t.text.push_back(src_[pos_++]);
            } else if (c == '\\' && pos_ + 1 < src_.size()) {
                t.text.push_back(src_[pos_++]);
                t.text.push_back(src_[pos_++]);
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace

bool Token::is_word(std::string_view upper) const {
    if (kind != Kind::Word || text.size() != upper.size()) return false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (std::toupper(static_cast<unsigned char>(text[i])) != upper[i]) return false;
    }
    return true;
}

std::string Token::describe() const {
    switch (kind) {
    case Kind::End: return "end of query";
    case Kind::Iri: return "<" + text + ">";
    case Kind::Var: return "?" + text;
    case Kind::String: return "\"" + text + "\"";
    default: return "'" + text + "'";
    }
}

std::vector<Token> tokenize(std::string_view text) {
    return Lexer(text).run();
}

} // namespace ontochat::sparql::detail
