#pragma once
#include "ontochat/rdf/graph.hpp"

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ontochat::rdf {

// Malformed Turtle. Line and column are 1-based; column counts bytes.
class TurtleSyntaxError : public std::runtime_error {
public:
    TurtleSyntaxError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

// Valid Turtle outside the supported subset (collections, anonymous blank
// node property lists, @base, relative IRIs).
class UnsupportedFeature : public std::runtime_error {
public:
    UnsupportedFeature(std::string feature, std::size_t line, std::size_t column);
    const std::string& feature() const { return feature_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string feature_;
    std::size_t line_;
    std::size_t column_;
};

struct TurtleDocument {
    Graph graph;
    // Non-fatal findings (duplicate statements, prefix redefinitions).
    std::vector<std::string> diagnostics;
};

TurtleDocument parse_turtle(std::string_view text);
TurtleDocument load_turtle_file(const std::filesystem::path& path);

// Canonical Turtle: prefixes sorted by name, then subjects, predicates and
// objects in canonical term order. Equal graphs (triples and prefixes)
// serialize to identical bytes.
std::string serialize_turtle(const Graph& graph);

// Compact form of an IRI under the given prefixes ("ex:Foo"), or "<iri>"
// when no prefix applies.
std::string compact_iri(std::string_view iri, const PrefixMap& prefixes);

} // namespace ontochat::rdf
