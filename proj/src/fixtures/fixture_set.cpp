#include "ontochat/fixtures/fixture_set.hpp"

#include "ontochat/rdf/turtle.hpp"
#include "ontochat/rdf/vocab.hpp"
#include "ontochat/sparql/evaluator.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ontochat::fixtures {

namespace v = rdf::vocab;
using eval::Odp;

const OdpFixture& FixtureSet::get(Odp odp) const {
    for (const auto& f : ontologies) {
        if (f.odp == odp) return f;
    }
    throw std::out_of_range("fixture set has no ontology for " + eval::to_string(odp));
}

std::string fixture_file_name(Odp odp) {
    switch (odp) {
    case Odp::VDI3682: return "vdi3682.ttl";
    case Odp::DINEN61360: return "dinen61360.ttl";
    case Odp::VDI2206: return "vdi2206.ttl";
    }
    return {};
}

FixtureSet load_fixture_set(const std::filesystem::path& dir) {
    FixtureSet set;
    set.dir = dir;
    for (Odp odp : eval::kOdps) {
        OdpFixture f;
        f.odp = odp;
        f.path = dir / fixture_file_name(odp);
        auto doc = rdf::load_turtle_file(f.path);
        f.graph = std::move(doc.graph);
        f.parts = ontology::partition(f.graph);
        set.ontologies.push_back(std::move(f));
    }
    return set;
}

namespace {

bool is_w3c(const std::string& iri) {
    for (std::string_view ns : {v::kRdf, v::kRdfs, v::kOwl, v::kXsd}) {
        if (iri.compare(0, ns.size(), ns) == 0) return true;
    }
    return false;
}

// Schema entity IRI with the given local name, if any.
std::optional<std::string> find_entity(const OdpFixture& f, const std::string& local) {
    for (const auto& iri : f.parts.schema_entities) {
        if (!is_w3c(iri) && rdf::local_name(iri) == local) return iri;
    }
    return std::nullopt;
}

bool has_triple(const rdf::Graph& g, const std::string& s, std::string_view p, const std::string& o) {
    return g.contains({rdf::Term::iri(s), rdf::Term::iri(std::string(p)), rdf::Term::iri(o)});
}

struct Relation {
    const char* name;
    const char* domain;
    const char* range;  // nullptr: any (datatype) range
};

struct Requirements {
    std::vector<const char*> classes;
    std::vector<std::pair<const char*, const char*>> subclasses;
    std::vector<Relation> relations;
};

Requirements requirements(Odp odp) {
    switch (odp) {
    case Odp::VDI3682:
        return {{"Process", "ProcessOperator", "TechnicalResource"},
                {},
                {{"isComposedOf", "Process", "ProcessOperator"}, {"isAssignedTo", "ProcessOperator", "TechnicalResource"}}};
    case Odp::VDI2206:
        return {{"System", "Module", "Component", "Sensor"},
                {{"Sensor", "Component"}},
                {{"includes", "System", "Module"}, {"isPartOf", "Component", "Module"}}};
    case Odp::DINEN61360:
        return {{"DataElement"}, {}, {{"hasName", "DataElement", nullptr}, {"hasValue", "DataElement", nullptr}}};
    }
    return {};
}

void check_structure(const OdpFixture& f, std::vector<std::string>& out) {
    std::string tag = f.path.filename().string() + ": ";
    const rdf::Graph& tbox = f.parts.tbox;
    Requirements req = requirements(f.odp);
    for (const char* c : req.classes) {
        auto iri = find_entity(f, c);
        if (!iri || !has_triple(tbox, *iri, v::kRdfType, std::string(v::kOwlClass))) {
            out.push_back(tag + "missing class " + c);
        }
    }
    for (const auto& [sub, super] : req.subclasses) {
        auto a = find_entity(f, sub);
        auto b = find_entity(f, super);
        if (!a || !b || !has_triple(tbox, *a, v::kRdfsSubClassOf, *b)) {
            out.push_back(tag + "missing " + sub + " subClassOf " + super);
        }
    }
    for (const auto& rel : req.relations) {
        auto p = find_entity(f, rel.name);
        if (!p) {
            out.push_back(tag + "missing property " + rel.name);
            continue;
        }
        auto d = find_entity(f, rel.domain);
        if (!d || !has_triple(tbox, *p, v::kRdfsDomain, *d)) {
            out.push_back(tag + "property " + rel.name + " lacks domain " + rel.domain);
        }
        if (rel.range) {
            auto r = find_entity(f, rel.range);
            if (!r || !has_triple(tbox, *p, v::kRdfsRange, *r)) {
                out.push_back(tag + "property " + rel.name + " lacks range " + rel.range);
            }
        }
    }

    rdf::Term comment = rdf::Term::iri(std::string(v::kRdfsComment));
    for (const auto& iri : f.parts.schema_entities) {
        auto n = f.graph.match({rdf::Term::iri(iri), comment, std::nullopt}).size();
        if (n != 1) out.push_back(tag + "schema entity " + iri + " has " + std::to_string(n) + " rdfs:comment (expected 1)");
    }

    if (f.parts.tbox.size() == 0) out.push_back(tag + "empty TBox");
    std::size_t abox = f.parts.abox.size();
    if (abox < 15 || abox > 40) out.push_back(tag + "ABox has " + std::to_string(abox) + " triples (expected 15-40)");
}

void check_gold(const FixtureSet& set, const eval::ExperimentMatrix& corpus, std::vector<std::string>& out) {
    for (const auto& rec : corpus.corpus) {
        const rdf::Graph& abox = set.get(rec.odp).parts.abox;
        for (std::size_t i = 0; i < rec.gold_parsed.size(); ++i) {
            std::string tag = rec.id + " gold " + std::to_string(i + 1) + ": ";
            sparql::ResultSet rs;
            try {
                rs = sparql::evaluate(rec.gold_parsed[i], abox);
            } catch (const std::exception& e) {
                out.push_back(tag + "evaluation failed: " + e.what());
                continue;
            }
            if (rs.is_boolean()) {
                if (!rs.boolean_value()) out.push_back(tag + "ASK is false on the fixture ABox");
                continue;
            }
            if (rs.rows().empty()) {
                out.push_back(tag + "empty result on the fixture ABox");
                continue;
            }
            if (rec.category == eval::Category::Rank) {
                std::set<std::string> distinct;
                for (const auto& row : rs.rows()) {
                    std::string key;
                    for (const auto& cell : row) key += (cell ? cell->key() : std::string()) + '\0';
                    distinct.insert(key);
                }
                if (distinct.size() < 3) out.push_back(tag + "non-discriminative Rank fixture");
            }
        }
    }
}

} // namespace

eval::Vocabulary vocabulary(const FixtureSet& set) {
    eval::Vocabulary out;
    for (const auto& f : set.ontologies) {
        auto& names = out[f.odp];
        for (const auto& iri : f.parts.schema_entities) {
            if (!is_w3c(iri)) names.insert(std::string(rdf::local_name(iri)));
        }
    }
    return out;
}

std::vector<std::string> validate_fixtures(const FixtureSet& set, const eval::ExperimentMatrix* corpus) {
    std::vector<std::string> out;
    for (const auto& f : set.ontologies) check_structure(f, out);
    if (corpus) check_gold(set, *corpus, out);
    return out;
}

} // namespace ontochat::fixtures
