#include "ontochat/chat/registry.hpp"

#include "ontochat/rdf/turtle.hpp"
#include "ontochat/rdf/vocab.hpp"
#include "ontochat/util/io.hpp"

#include <algorithm>

namespace ontochat::chat {

OntologyRegistry OntologyRegistry::load_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) throw IoError(dir, "not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ttl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    OntologyRegistry registry;
    for (const auto& f : files) registry.add(f.stem().string(), rdf::load_turtle_file(f).graph, f);
    return registry;
}

void OntologyRegistry::add(std::string id, rdf::Graph graph, std::filesystem::path path) {
    auto o = std::make_shared<LoadedOntology>();
    o->id = id;
    o->path = std::move(path);
    o->graph = std::move(graph);
    o->parts = ontology::partition(o->graph);
    o->tbox_commented =
        ontology::render_prompt_tbox(ontology::apply_comment_policy(o->parts.tbox, ontology::CommentPolicy::Retain));
    o->tbox_stripped =
        ontology::render_prompt_tbox(ontology::apply_comment_policy(o->parts.tbox, ontology::CommentPolicy::Strip));
    o->privacy_markers = ontology::privacy_markers(o->parts);
    rdf::Term type = rdf::Term::iri(std::string(rdf::vocab::kRdfType));
    rdf::Term owl_class = rdf::Term::iri(std::string(rdf::vocab::kOwlClass));
    o->class_count = o->parts.tbox.match({std::nullopt, type, owl_class}).size();
    o->individual_count = ontology::abox_individuals(o->parts).size();
    o->has_comments = ontology::count_comments(o->parts.tbox) > 0;
    by_id_[std::move(id)] = std::move(o);
}

const LoadedOntology& OntologyRegistry::get(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw OntologyNotFound(id);
    return *it->second;
}

std::vector<const LoadedOntology*> OntologyRegistry::list() const {
    std::vector<const LoadedOntology*> out;
    for (const auto& [id, o] : by_id_) out.push_back(o.get());
    return out;
}

} // namespace ontochat::chat
