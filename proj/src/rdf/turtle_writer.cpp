#include "ontochat/rdf/turtle.hpp"

#include "ontochat/rdf/vocab.hpp"

#include <cctype>
#include <regex>
#include <sstream>

namespace ontochat::rdf {

namespace {

bool valid_local(std::string_view local) {
    if (local.empty()) return true;
    auto ok = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    };
    char first = local.front();
    if (!(std::isalnum(static_cast<unsigned char>(first)) || first == '_')) return false;
    if (local.back() == '.') return false;
    for (char c : local) {
        if (!ok(c)) return false;
    }
    return true;
}

bool matches(const std::string& lexical, const std::regex& re) {
    return std::regex_match(lexical, re);
}

std::string render_literal(const Term& t, const PrefixMap& prefixes) {
    static const std::regex kInteger(R"([+-]?[0-9]+)");
    static const std::regex kDecimal(R"([+-]?[0-9]*\.[0-9]+)");
    static const std::regex kDouble(R"([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)[eE][+-]?[0-9]+)");

    const std::string& dt = t.datatype();
    const std::string& lex = t.value();
    if (dt == vocab::kXsdInteger && matches(lex, kInteger)) return lex;
    if (dt == vocab::kXsdDecimal && matches(lex, kDecimal)) return lex;
    if (dt == vocab::kXsdDouble && matches(lex, kDouble)) return lex;
    if (dt == vocab::kXsdBoolean && (lex == "true" || lex == "false")) return lex;

    std::string out = "\"" + escape_string(lex) + "\"";
    if (!t.language().empty()) return out + "@" + t.language();
    if (dt == vocab::kXsdString) return out;
    return out + "^^" + compact_iri(dt, prefixes);
}

std::string render(const Term& t, const PrefixMap& prefixes) {
    switch (t.kind()) {
    case TermKind::Iri: return compact_iri(t.value(), prefixes);
    case TermKind::BlankNode: return "_:" + t.value();
    case TermKind::Literal: return render_literal(t, prefixes);
    }
    return {};
}

} // namespace

std::string compact_iri(std::string_view iri, const PrefixMap& prefixes) {
    const std::string* best_prefix = nullptr;
    std::size_t best_len = 0;
    for (const auto& [prefix, ns] : prefixes) {
        if (ns.empty() || ns.size() < best_len || iri.substr(0, ns.size()) != ns) continue;
        if (!valid_local(iri.substr(ns.size()))) continue;
        // Longest namespace wins; the map is sorted, so ties keep the smallest prefix.
        if (!best_prefix || ns.size() > best_len) {
            best_prefix = &prefix;
            best_len = ns.size();
        }
    }
    if (!best_prefix) return "<" + std::string(iri) + ">";
    return *best_prefix + ":" + std::string(iri.substr(best_len));
}

std::string serialize_turtle(const Graph& graph) {
    std::ostringstream out;
    const PrefixMap& prefixes = graph.prefixes();
    for (const auto& [prefix, ns] : prefixes) {
        out << "@prefix " << prefix << ": <" << ns << "> .\n";
    }

    const Term* subject = nullptr;
    const Term* predicate = nullptr;
    for (const Triple& t : graph) {
        if (!subject || t.subject != *subject) {
            if (subject) out << " .\n";
            out << "\n" << render(t.subject, prefixes) << " ";
            subject = &t.subject;
            predicate = nullptr;
        }
        if (!predicate || t.predicate != *predicate) {
            if (predicate) out << " ;\n    ";
            out << (t.predicate.value() == vocab::kRdfType ? std::string("a") : render(t.predicate, prefixes))
                << " ";
            predicate = &t.predicate;
        } else {
            out << " , ";
        }
        out << render(t.object, prefixes);
    }
    if (subject) out << " .\n";
    return out.str();
}

} // namespace ontochat::rdf
