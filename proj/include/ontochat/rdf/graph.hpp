#pragma once
#include "ontochat/rdf/term.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ontochat::rdf {

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

// A triple pattern; std::nullopt is a wildcard.
struct TriplePattern {
    std::optional<Term> subject;
    std::optional<Term> predicate;
    std::optional<Term> object;
};

// prefix name (without ':') -> namespace IRI
using PrefixMap = std::map<std::string, std::string>;

// Set of triples with subject/predicate/object indexes.
//
// Iteration and match results follow the canonical triple order (subject,
// predicate, object by N-Triples byte order). Mutation is single-threaded;
// a fully built graph is safe for concurrent readers.
class Graph {
public:
    Graph() = default;
    Graph(const Graph& other);
    Graph& operator=(const Graph& other);
    Graph(Graph&&) noexcept = default;
    Graph& operator=(Graph&&) noexcept = default;

    // Returns false for a duplicate. Throws std::invalid_argument if the
    // predicate is not an IRI or the subject is a literal.
    bool insert(Triple triple);
    bool contains(const Triple& triple) const { return triples_.count(triple) > 0; }

    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    std::vector<Triple> match(const TriplePattern& pattern) const;

    auto begin() const { return triples_.begin(); }
    auto end() const { return triples_.end(); }

    const PrefixMap& prefixes() const { return prefixes_; }
    void set_prefix(std::string prefix, std::string ns) { prefixes_[std::move(prefix)] = std::move(ns); }
    void set_prefixes(PrefixMap prefixes) { prefixes_ = std::move(prefixes); }

private:
    struct PtrLess {
        bool operator()(const Triple* a, const Triple* b) const { return *a < *b; }
    };
    using Bucket = std::set<const Triple*, PtrLess>;
    using Index = std::map<std::string, Bucket, std::less<>>;

    void index(const Triple& stored);

    std::set<Triple> triples_;
    Index by_subject_;
    Index by_predicate_;
    Index by_object_;
    PrefixMap prefixes_;
};

inline std::vector<Triple> match_pattern(const Graph& graph, const TriplePattern& pattern) {
    return graph.match(pattern);
}

} // namespace ontochat::rdf
