#include "ontochat/rdf/term.hpp"

#include "ontochat/rdf/vocab.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace ontochat::rdf {

namespace {

constexpr std::array<std::string_view, 14> kNumericTypes = {
    vocab::kXsdInteger,
    vocab::kXsdDecimal,
    vocab::kXsdDouble,
    vocab::kXsdFloat,
    "http://www.w3.org/2001/XMLSchema#int",
    "http://www.w3.org/2001/XMLSchema#long",
    "http://www.w3.org/2001/XMLSchema#short",
    "http://www.w3.org/2001/XMLSchema#byte",
    "http://www.w3.org/2001/XMLSchema#nonNegativeInteger",
    "http://www.w3.org/2001/XMLSchema#positiveInteger",
    "http://www.w3.org/2001/XMLSchema#negativeInteger",
    "http://www.w3.org/2001/XMLSchema#nonPositiveInteger",
    "http://www.w3.org/2001/XMLSchema#unsignedInt",
    "http://www.w3.org/2001/XMLSchema#unsignedLong",
};

std::string make_key(TermKind kind, const std::string& value, const std::string& datatype,
                     const std::string& language) {
    switch (kind) {
    case TermKind::Iri:
        return "<" + value + ">";
    case TermKind::BlankNode:
        return "_:" + value;
    case TermKind::Literal:
        break;
    }
    std::string key = "\"" + escape_string(value) + "\"";
    if (!language.empty()) {
        key += "@" + language;
    } else if (datatype != vocab::kXsdString) {
        key += "^^<" + datatype + ">";
    }
    return key;
}

} // namespace

Term::Term(TermKind kind, std::string value, std::string datatype, std::string language)
    : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)),
      language_(std::move(language)) {
    key_ = make_key(kind_, value_, datatype_, language_);
}

Term Term::iri(std::string iri) {
    return Term(TermKind::Iri, std::move(iri), {}, {});
}

Term Term::blank(std::string label) {
    if (label.empty()) throw std::invalid_argument("blank node label must not be empty");
    return Term(TermKind::BlankNode, std::move(label), {}, {});
}

Term Term::literal(std::string lexical, std::string datatype) {
    if (datatype.empty()) datatype = std::string(vocab::kXsdString);
    if (datatype == vocab::kRdfLangString) {
        throw std::invalid_argument("rdf:langString literal requires a language tag");
    }
    return Term(TermKind::Literal, std::move(lexical), std::move(datatype), {});
}

Term Term::lang_literal(std::string lexical, std::string language) {
    if (language.empty()) throw std::invalid_argument("language tag must not be empty");
    std::transform(language.begin(), language.end(), language.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return Term(TermKind::Literal, std::move(lexical), std::string(vocab::kRdfLangString),
                std::move(language));
}

Term Term::integer(long long value) {
    return literal(std::to_string(value), std::string(vocab::kXsdInteger));
}

Term Term::boolean(bool value) {
    return literal(value ? "true" : "false", std::string(vocab::kXsdBoolean));
}

bool Term::is_numeric() const {
    if (!is_literal()) return false;
    return std::find(kNumericTypes.begin(), kNumericTypes.end(), datatype_) != kNumericTypes.end();
}

bool Term::is_string() const {
    return is_literal() && (datatype_ == vocab::kXsdString || datatype_ == vocab::kRdfLangString);
}

std::optional<double> Term::numeric_value() const {
    if (!is_numeric()) return std::nullopt;
    std::string_view s = value_;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        // INF/NaN spellings are not representable here; treat as ill-typed.
        return std::nullopt;
    }
    return out;
}

std::string escape_string(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string_view local_name(std::string_view iri) {
    auto pos = iri.find_last_of("#/:");
    if (pos == std::string_view::npos) return iri;
    return iri.substr(pos + 1);
}

} // namespace ontochat::rdf
