#pragma once
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace ontochat::rdf {

enum class TermKind { Iri, BlankNode, Literal };

// An RDF term. Immutable value type.
//
// Every term carries its N-Triples rendering (`key()`), which is both its
// identity and its canonical sort key: terms compare by the UTF-8 byte order
// of that rendering.
class Term {
public:
    static Term iri(std::string iri);
    static Term blank(std::string label);
    // A literal with an explicit datatype; an empty datatype means xsd:string.
    static Term literal(std::string lexical, std::string datatype = {});
    static Term lang_literal(std::string lexical, std::string language);
    static Term integer(long long value);
    static Term boolean(bool value);

    TermKind kind() const { return kind_; }
    bool is_iri() const { return kind_ == TermKind::Iri; }
    bool is_blank() const { return kind_ == TermKind::BlankNode; }
    bool is_literal() const { return kind_ == TermKind::Literal; }

    // IRI string, blank node label, or literal lexical form.
    const std::string& value() const { return value_; }
    // Literals only; empty for IRIs and blank nodes.
    const std::string& datatype() const { return datatype_; }
    const std::string& language() const { return language_; }

    // N-Triples rendering, e.g. <http://x>, _:b0, "5"^^<...#integer>.
    const std::string& key() const { return key_; }

    // Numeric literal (xsd:integer/decimal/double/float and the integer subtypes).
    bool is_numeric() const;
    // Plain string literal: xsd:string or a language-tagged string.
    bool is_string() const;
    std::optional<double> numeric_value() const;

    friend bool operator==(const Term& a, const Term& b) { return a.key_ == b.key_; }
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
        return a.key_.compare(b.key_) <=> 0;
    }

private:
    Term(TermKind kind, std::string value, std::string datatype, std::string language);

    TermKind kind_ = TermKind::Iri;
    std::string value_;
    std::string datatype_;
    std::string language_;
    std::string key_;
};

// Escapes a string for use inside a double-quoted N-Triples/Turtle literal.
std::string escape_string(std::string_view s);

// Local name of an IRI: the part after the last '#', '/' or ':'.
std::string_view local_name(std::string_view iri);

} // namespace ontochat::rdf
