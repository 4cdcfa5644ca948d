#pragma once
#include "ontochat/ontology/partition.hpp"
#include "ontochat/rdf/graph.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontochat::chat {

class OntologyNotFound : public std::runtime_error {
public:
    explicit OntologyNotFound(const std::string& id) : std::runtime_error("unknown ontology '" + id + "'") {}
};

// An ontology prepared for serving; immutable once loaded.
struct LoadedOntology {
    std::string id;
    std::filesystem::path path;
    rdf::Graph graph;
    ontology::PartitionedOntology parts;
    std::string tbox_commented;
    std::string tbox_stripped;
    std::vector<std::string> privacy_markers;
    std::size_t class_count = 0;
    std::size_t individual_count = 0;
    bool has_comments = false;

    const std::string& tbox_text(ontology::CommentPolicy policy) const {
        return policy == ontology::CommentPolicy::Retain ? tbox_commented : tbox_stripped;
    }
};

class OntologyRegistry {
public:
    // Every *.ttl file of the directory; the id is the file stem.
    static OntologyRegistry load_directory(const std::filesystem::path& dir);

    void add(std::string id, rdf::Graph graph, std::filesystem::path path = {});
    // Throws OntologyNotFound.
    const LoadedOntology& get(const std::string& id) const;
    bool contains(const std::string& id) const { return by_id_.count(id) > 0; }
    // Sorted by id.
    std::vector<const LoadedOntology*> list() const;

private:
    std::map<std::string, std::shared_ptr<const LoadedOntology>> by_id_;
};

} // namespace ontochat::chat
