#include "ontochat/rdf/turtle.hpp"

#include "ontochat/rdf/vocab.hpp"
#include "ontochat/util/io.hpp"
#include "ontochat/util/utf8.hpp"

#include <cctype>
#include <string>

namespace ontochat::rdf {

TurtleSyntaxError::TurtleSyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("Turtle syntax error at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + message),
      line_(line), column_(column), message_(message) {}

UnsupportedFeature::UnsupportedFeature(std::string feature, std::size_t line, std::size_t column)
    : std::runtime_error("unsupported Turtle feature at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + feature),
      feature_(std::move(feature)), line_(line), column_(column) {}

namespace {

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }

bool is_name_char(char c) {
    return is_alpha(c) || is_digit(c) || is_high(c) || c == '_' || c == '-' || c == '.' || c == ':' ||
           c == '%';
}

bool is_local_escape(char c) {
    static constexpr std::string_view kChars = "_~.-!$&'()*+,;=/?#@%";
    return kChars.find(c) != std::string_view::npos;
}

bool has_scheme(std::string_view iri) {
    if (iri.empty() || !is_alpha(iri[0])) return false;
    for (std::size_t i = 1; i < iri.size(); ++i) {
        char c = iri[i];
        if (c == ':') return true;
        if (!(is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.')) return false;
    }
    return false;
}

class TurtleParser {
public:
    explicit TurtleParser(std::string_view text) : src_(text) {}

    TurtleDocument run() {
        skip_ws();
        while (!at_end()) {
            statement();
            skip_ws();
        }
        doc_.graph.set_prefixes(prefixes_);
        if (duplicates_ > 0) {
            doc_.diagnostics.push_back(std::to_string(duplicates_) + " duplicate triple(s) ignored");
        }
        return std::move(doc_);
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    char get() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw TurtleSyntaxError(line_, col_, message);
    }
    [[noreturn]] void unsupported(const std::string& feature) const {
        throw UnsupportedFeature(feature, line_, col_);
    }

    void expect(char c) {
        if (at_end() || peek() != c) {
            fail(std::string("expected '") + c + "'" + (at_end() ? " before end of input" : ""));
        }
        get();
    }

    void skip_ws() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                get();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') get();
            } else {
                break;
            }
        }
    }

    // Case-insensitive bare word at the cursor followed by whitespace.
    bool at_word_ci(std::string_view word) const {
        if (pos_ + word.size() >= src_.size()) return false;
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (std::toupper(static_cast<unsigned char>(src_[pos_ + i])) != word[i]) return false;
        }
        char after = src_[pos_ + word.size()];
        return after == ' ' || after == '\t' || after == '\n' || after == '\r';
    }

    void statement() {
        if (peek() == '@') {
            get();
            std::string word;
            while (!at_end() && is_alpha(peek())) word.push_back(get());
            if (word == "prefix") {
                prefix_directive(true);
            } else if (word == "base") {
                unsupported("@base directive");
            } else {
                fail("unknown directive '@" + word + "'");
            }
            return;
        }
        if (at_word_ci("PREFIX")) {
            for (int i = 0; i < 6; ++i) get();
            prefix_directive(false);
            return;
        }
        if (at_word_ci("BASE")) unsupported("BASE directive");

        Term subj = subject();
        predicate_object_list(subj);
        skip_ws();
        expect('.');
    }

    void prefix_directive(bool needs_dot) {
        skip_ws();
        std::string name;
        while (!at_end() && peek() != ':') {
            char c = peek();
            if (!(is_alpha(c) || is_digit(c) || is_high(c) || c == '_' || c == '-' || c == '.')) {
                fail("invalid character in prefix name");
            }
            name.push_back(get());
        }
        expect(':');
        if (!name.empty() && !is_alpha(name[0]) && !is_high(name[0])) {
            fail("prefix name must start with a letter");
        }
        skip_ws();
        if (peek() != '<') fail("expected namespace IRI after prefix '" + name + ":'");
        std::size_t at_line = line_;
        std::string ns = iri_ref();
        auto it = prefixes_.find(name);
        if (it != prefixes_.end() && it->second != ns) {
            doc_.diagnostics.push_back("prefix '" + name + ":' redefined at line " +
                                       std::to_string(at_line));
        }
        prefixes_[name] = ns;
        if (needs_dot) {
            skip_ws();
            expect('.');
        }
    }

    void predicate_object_list(const Term& subj) {
        for (;;) {
            skip_ws();
            Term pred = verb();
            object_list(subj, pred);
            skip_ws();
            if (peek() != ';') return;
            while (peek() == ';') {
                get();
                skip_ws();
            }
            if (peek() == '.' || at_end()) return;
        }
    }

    void object_list(const Term& subj, const Term& pred) {
        for (;;) {
            skip_ws();
            Term obj = object();
            if (!doc_.graph.insert(Triple{subj, pred, std::move(obj)})) ++duplicates_;
            skip_ws();
            if (peek() != ',') return;
            get();
        }
    }

    void reject_nested() const {
        if (peek() == '[') unsupported("anonymous blank node property list");
        if (peek() == '(') unsupported("collection");
    }

    Term subject() {
        reject_nested();
        if (peek() == '<') return Term::iri(iri_ref());
        if (peek() == '_' && peek(1) == ':') return blank_node();
        if (peek() == '"' || peek() == '\'' || is_digit(peek())) fail("literal in subject position");
        std::string token = pname_token();
        if (token.find(':') == std::string::npos) fail("expected subject, found '" + token + "'");
        return prefixed_name(token);
    }

    Term verb() {
        if (peek() == '<') return Term::iri(iri_ref());
        if (peek() == '_' && peek(1) == ':') fail("blank node in predicate position");
        reject_nested();
        std::string token = pname_token();
        if (token == "a") return Term::iri(std::string(vocab::kRdfType));
        if (token.find(':') == std::string::npos) {
            fail(token.empty() ? "expected predicate" : "expected predicate, found '" + token + "'");
        }
        return prefixed_name(token);
    }

    Term object() {
        reject_nested();
        char c = peek();
        if (c == '<') return Term::iri(iri_ref());
        if (c == '_' && peek(1) == ':') return blank_node();
        if (c == '"' || c == '\'') return string_literal();
        if (is_digit(c) || c == '+' || c == '-' || (c == '.' && is_digit(peek(1)))) return numeric_literal();
        std::string token = pname_token();
        if (token == "true" || token == "false") {
            return Term::literal(token, std::string(vocab::kXsdBoolean));
        }
        if (token.find(':') == std::string::npos) {
            fail(token.empty() ? "expected object" : "expected object, found '" + token + "'");
        }
        return prefixed_name(token);
    }

    std::string iri_ref() {
        expect('<');
        std::string iri;
        for (;;) {
            if (at_end()) fail("unterminated IRI");
            char c = get();
            if (c == '>') break;
            if (c == '\\') {
                char kind = at_end() ? '\0' : get();
                if (kind != 'u' && kind != 'U') fail("invalid escape in IRI");
                append_codepoint(iri, kind == 'u' ? 4 : 8);
                continue;
            }
            if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
                c == '|' || c == '^' || c == '`') {
                fail("invalid character in IRI");
            }
            iri.push_back(c);
        }
        if (!has_scheme(iri)) unsupported("relative IRI reference <" + iri + ">");
        return iri;
    }

    void append_codepoint(std::string& out, int digits) {
        char32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            if (at_end() || !std::isxdigit(static_cast<unsigned char>(peek()))) {
                fail("invalid unicode escape");
            }
            char h = get();
            cp = cp * 16 + static_cast<char32_t>(is_digit(h) ? h - '0' : (std::tolower(h) - 'a' + 10));
        }
        if (!append_utf8(out, cp)) fail("invalid code point in unicode escape");
    }

    Term blank_node() {
        get();
        get();
        std::string label;
        char first = peek();
        if (!(is_alpha(first) || is_digit(first) || is_high(first) || first == '_')) {
            fail("invalid blank node label");
        }
        std::size_t end = pos_;
        while (end < src_.size()) {
            char c = src_[end];
            if (is_alpha(c) || is_digit(c) || is_high(c) || c == '_' || c == '-' || c == '.') {
                ++end;
            } else {
                break;
            }
        }
        while (end > pos_ && src_[end - 1] == '.') --end;
        while (pos_ < end) label.push_back(get());
        return Term::blank(std::move(label));
    }

    // Prefixed name or bare keyword; trailing dots belong to the statement.
    std::string pname_token() {
        std::size_t end = pos_;
        while (end < src_.size()) {
            char c = src_[end];
            if (c == '\\' && end + 1 < src_.size()) {
                end += 2;
            } else if (is_name_char(c)) {
                ++end;
            } else {
                break;
            }
        }
        while (end > pos_ && src_[end - 1] == '.') --end;
        std::string token;
        while (pos_ < end) token.push_back(get());
        return token;
    }

    Term prefixed_name(const std::string& token) {
        auto colon = token.find(':');
        std::string prefix = token.substr(0, colon);
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) fail("undefined prefix '" + prefix + ":'");
        std::string local;
        for (std::size_t i = colon + 1; i < token.size(); ++i) {
            if (token[i] == '\\') {
                if (i + 1 >= token.size() || !is_local_escape(token[i + 1])) {
                    fail("invalid escape in local name");
                }
                local.push_back(token[++i]);
            } else {
                local.push_back(token[i]);
            }
        }
        return Term::iri(it->second + local);
    }

    Term string_literal() {
        char q = get();
        bool long_form = peek() == q && peek(1) == q;
        if (long_form) {
            get();
            get();
        } else if (peek() == q) {
            get();
            return literal_suffix(std::string());
        }
        std::string value;
        for (;;) {
            if (at_end()) fail("unterminated string literal");
            char c = peek();
            if (long_form && c == q && peek(1) == q && peek(2) == q) {
                get();
                get();
                get();
                break;
            }
            if (!long_form && c == q) {
                get();
                break;
            }
            if (!long_form && (c == '\n' || c == '\r')) fail("line break in short string literal");
            get();
            if (c != '\\') {
                value.push_back(c);
                continue;
            }
            if (at_end()) fail("unterminated escape");
            char e = get();
            switch (e) {
            case 't': value.push_back('\t'); break;
            case 'b': value.push_back('\b'); break;
            case 'n': value.push_back('\n'); break;
            case 'r': value.push_back('\r'); break;
            case 'f': value.push_back('\f'); break;
            case '"': value.push_back('"'); break;
            case '\'': value.push_back('\''); break;
            case '\\': value.push_back('\\'); break;
            case 'u': append_codepoint(value, 4); break;
            case 'U': append_codepoint(value, 8); break;
            default: fail(std::string("invalid escape '\\") + e + "'");
            }
        }
        return literal_suffix(std::move(value));
    }

    Term literal_suffix(std::string value) {
        if (peek() == '@') {
            get();
            std::string lang;
            while (!at_end() && (is_alpha(peek()) || (!lang.empty() && (peek() == '-' || is_digit(peek()))))) {
                lang.push_back(get());
            }
            if (lang.empty() || lang.back() == '-') fail("invalid language tag");
            return Term::lang_literal(std::move(value), std::move(lang));
        }
        if (peek() == '^' && peek(1) == '^') {
            get();
            get();
            std::string datatype;
            if (peek() == '<') {
                datatype = iri_ref();
            } else {
                std::string token = pname_token();
                if (token.find(':') == std::string::npos) fail("expected datatype IRI");
                datatype = prefixed_name(token).value();
            }
            if (datatype == vocab::kRdfLangString) fail("rdf:langString literal without language tag");
            return Term::literal(std::move(value), std::move(datatype));
        }
        return Term::literal(std::move(value));
    }

    Term numeric_literal() {
        std::string lexical;
        if (peek() == '+' || peek() == '-') lexical.push_back(get());
        bool digits = false;
        while (is_digit(peek())) {
            lexical.push_back(get());
            digits = true;
        }
        bool decimal = false;
        if (peek() == '.' && is_digit(peek(1))) {
            decimal = true;
            lexical.push_back(get());
            while (is_digit(peek())) lexical.push_back(get());
            digits = true;
        }
        bool exponent = false;
        if (digits && (peek() == 'e' || peek() == 'E')) {
            std::size_t k = 1;
            if (peek(1) == '+' || peek(1) == '-') k = 2;
            if (is_digit(peek(k))) {
                exponent = true;
                for (std::size_t i = 0; i < k; ++i) lexical.push_back(get());
                while (is_digit(peek())) lexical.push_back(get());
            }
        }
        if (!digits) fail("invalid numeric literal");
        std::string_view type = exponent ? vocab::kXsdDouble : decimal ? vocab::kXsdDecimal : vocab::kXsdInteger;
        return Term::literal(std::move(lexical), std::string(type));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    TurtleDocument doc_;
    PrefixMap prefixes_;
    std::size_t duplicates_ = 0;
};

} // namespace

TurtleDocument parse_turtle(std::string_view text) {
    return TurtleParser(text).run();
}

TurtleDocument load_turtle_file(const std::filesystem::path& path) {
    return parse_turtle(read_file(path));
}

} // namespace ontochat::rdf
