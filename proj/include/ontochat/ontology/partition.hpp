#pragma once
#include "ontochat/rdf/graph.hpp"

#include <set>
#include <string>
#include <vector>

namespace ontochat::ontology {

// The two prompt conditions of the comment experiment.
enum class CommentPolicy { Retain, Strip };

struct PartitionedOntology {
    rdf::Graph tbox;
    rdf::Graph abox;
    // IRIs of classes and properties (subjects of schema typing or
    // subClassOf/domain/range triples).
    std::set<std::string> schema_entities;
    // Warning-level findings, e.g. "EmptyTBox".
    std::vector<std::string> diagnostics;
};

// Syntactic TBox/ABox split; no reasoning.
//
// The TBox holds every triple whose subject is a schema entity or the
// ontology header, plus triples of blank nodes reachable from those. All
// other triples, including unclassified ones, go to the ABox so they never
// reach a prompt. The TBox keeps only the prefixes it uses.
PartitionedOntology partition(const rdf::Graph& graph);

rdf::Graph apply_comment_policy(const rdf::Graph& tbox, CommentPolicy policy);

// Deterministic prompt rendering of a (policy-filtered) TBox.
std::string render_prompt_tbox(const rdf::Graph& tbox);

// IRIs naming ABox individuals: IRI subjects of ABox triples and IRI objects
// of non-typing ABox triples, minus schema entities and W3C vocabulary.
std::set<std::string> abox_individuals(const PartitionedOntology& parts);

// Strings that must never appear in a prompt: each individual's full IRI
// and its compact form under the source prefixes.
std::vector<std::string> privacy_markers(const PartitionedOntology& parts);

std::size_t count_comments(const rdf::Graph& graph);

} // namespace ontochat::ontology
