#include "ontochat/ontology/partition.hpp"

#include "ontochat/rdf/turtle.hpp"
#include "ontochat/rdf/vocab.hpp"

#include <array>
#include <deque>

namespace ontochat::ontology {

namespace v = rdf::vocab;

namespace {

bool is_schema_type(const std::string& iri) {
    return iri == v::kOwlClass || iri == v::kOwlObjectProperty || iri == v::kOwlDatatypeProperty ||
           iri == v::kOwlAnnotationProperty;
}

bool is_schema_predicate(const std::string& iri) {
    return iri == v::kRdfsSubClassOf || iri == v::kRdfsDomain || iri == v::kRdfsRange;
}

bool in_w3c_vocab(std::string_view iri) {
    for (std::string_view ns : {v::kRdf, v::kRdfs, v::kOwl, v::kXsd}) {
        if (iri.substr(0, ns.size()) == ns) return true;
    }
    return false;
}

rdf::PrefixMap used_prefixes(const rdf::Graph& graph, const rdf::PrefixMap& all) {
    rdf::PrefixMap used;
    auto note = [&](std::string_view iri) {
        for (const auto& [prefix, ns] : all) {
            if (!ns.empty() && iri.substr(0, ns.size()) == ns) used.emplace(prefix, ns);
        }
    };
    for (const auto& t : graph) {
        for (const rdf::Term* term : {&t.subject, &t.predicate, &t.object}) {
            if (term->is_iri()) note(term->value());
            if (term->is_literal()) note(term->datatype());
        }
    }
    return used;
}

} // namespace

PartitionedOntology partition(const rdf::Graph& graph) {
    PartitionedOntology out;
    std::set<rdf::Term> tbox_subjects;

    for (const auto& t : graph) {
        const std::string& pred = t.predicate.value();
        bool schema = (pred == v::kRdfType && t.object.is_iri() && is_schema_type(t.object.value())) ||
                      is_schema_predicate(pred);
        if (schema) {
            tbox_subjects.insert(t.subject);
            if (t.subject.is_iri()) out.schema_entities.insert(t.subject.value());
        }
        if (pred == v::kRdfType && t.object.is_iri() && t.object.value() == v::kOwlOntology) {
            tbox_subjects.insert(t.subject);
        }
    }

    // Blank nodes hanging off schema subjects (restrictions and the like).
    std::deque<rdf::Term> frontier(tbox_subjects.begin(), tbox_subjects.end());
    while (!frontier.empty()) {
        rdf::Term subject = frontier.front();
        frontier.pop_front();
        for (const auto& t : graph.match({subject, std::nullopt, std::nullopt})) {
            if (t.object.is_blank() && tbox_subjects.insert(t.object).second) frontier.push_back(t.object);
        }
    }

    for (const auto& t : graph) {
        if (tbox_subjects.count(t.subject)) {
            out.tbox.insert(t);
        } else {
            out.abox.insert(t);
        }
    }
    out.tbox.set_prefixes(used_prefixes(out.tbox, graph.prefixes()));
    out.abox.set_prefixes(graph.prefixes());

    if (out.schema_entities.empty()) {
        out.diagnostics.push_back("EmptyTBox: no schema entity found (data-only file?)");
    }
    return out;
}

rdf::Graph apply_comment_policy(const rdf::Graph& tbox, CommentPolicy policy) {
    if (policy == CommentPolicy::Retain) return tbox;
    rdf::Graph out;
    for (const auto& t : tbox) {
        if (t.predicate.value() != v::kRdfsComment) out.insert(t);
    }
    out.set_prefixes(used_prefixes(out, tbox.prefixes()));
    return out;
}

std::string render_prompt_tbox(const rdf::Graph& tbox) {
    return rdf::serialize_turtle(tbox);
}

std::set<std::string> abox_individuals(const PartitionedOntology& parts) {
    std::set<std::string> out;
    auto consider = [&](const rdf::Term& term) {
        if (!term.is_iri()) return;
        const std::string& iri = term.value();
        if (parts.schema_entities.count(iri) || in_w3c_vocab(iri)) return;
        out.insert(iri);
    };
    for (const auto& t : parts.abox) {
        consider(t.subject);
        if (t.predicate.value() != v::kRdfType) consider(t.object);
    }
    return out;
}

std::vector<std::string> privacy_markers(const PartitionedOntology& parts) {
    std::vector<std::string> out;
    for (const auto& iri : abox_individuals(parts)) {
        out.push_back(iri);
        std::string compact = rdf::compact_iri(iri, parts.abox.prefixes());
        if (compact.front() != '<') out.push_back(std::move(compact));
    }
    return out;
}

std::size_t count_comments(const rdf::Graph& graph) {
    std::size_t n = 0;
    for (const auto& t : graph) {
        if (t.predicate.value() == v::kRdfsComment) ++n;
    }
    return n;
}

} // namespace ontochat::ontology
