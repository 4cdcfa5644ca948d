#include "ontochat/rdf/graph.hpp"

#include <stdexcept>

namespace ontochat::rdf {

Graph::Graph(const Graph& other) : prefixes_(other.prefixes_) {
    for (const auto& t : other.triples_) insert(t);
}

Graph& Graph::operator=(const Graph& other) {
    if (this != &other) {
        Graph copy(other);
        *this = std::move(copy);
    }
    return *this;
}

bool Graph::insert(Triple triple) {
    if (!triple.predicate.is_iri()) {
        throw std::invalid_argument("predicate must be an IRI: " + triple.predicate.key());
    }
    if (triple.subject.is_literal()) {
        throw std::invalid_argument("subject must not be a literal: " + triple.subject.key());
    }
    auto [it, inserted] = triples_.insert(std::move(triple));
    if (inserted) index(*it);
    return inserted;
}

void Graph::index(const Triple& stored) {
    by_subject_[stored.subject.key()].insert(&stored);
    by_predicate_[stored.predicate.key()].insert(&stored);
    by_object_[stored.object.key()].insert(&stored);
}

std::vector<Triple> Graph::match(const TriplePattern& pattern) const {
    std::vector<Triple> out;
    const Bucket* smallest = nullptr;
    auto narrow = [&](const Index& index, const std::optional<Term>& term) -> bool {
        if (!term) return true;
        auto it = index.find(term->key());
        if (it == index.end()) return false;
        if (!smallest || it->second.size() < smallest->size()) smallest = &it->second;
        return true;
    };
    if (!narrow(by_subject_, pattern.subject) || !narrow(by_predicate_, pattern.predicate) ||
        !narrow(by_object_, pattern.object)) {
        return out;
    }
    auto matches = [&](const Triple& t) {
        return (!pattern.subject || t.subject == *pattern.subject) &&
               (!pattern.predicate || t.predicate == *pattern.predicate) &&
               (!pattern.object || t.object == *pattern.object);
    };
    if (smallest) {
        for (const Triple* t : *smallest) {
            if (matches(*t)) out.push_back(*t);
        }
    } else {
        out.assign(triples_.begin(), triples_.end());
    }
    return out;
}

} // namespace ontochat::rdf
