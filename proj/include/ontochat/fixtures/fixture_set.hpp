#pragma once
#include "ontochat/eval/corpus.hpp"
#include "ontochat/ontology/partition.hpp"
#include "ontochat/rdf/graph.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace ontochat::fixtures {

struct OdpFixture {
    eval::Odp odp = eval::Odp::VDI3682;
    std::filesystem::path path;
    rdf::Graph graph;
    ontology::PartitionedOntology parts;
};

struct FixtureSet {
    std::filesystem::path dir;
    std::vector<OdpFixture> ontologies;  // in eval::kOdps order

    const OdpFixture& get(eval::Odp odp) const;
};

// "vdi3682.ttl", "dinen61360.ttl", "vdi2206.ttl"
std::string fixture_file_name(eval::Odp odp);

// Loads and partitions the three ODP files of a fixture directory.
FixtureSet load_fixture_set(const std::filesystem::path& dir);

// Local names of each ODP's schema entities, for the corpus phrasing rules.
eval::Vocabulary vocabulary(const FixtureSet& set);

// Structural checks on the fixtures and, if given, on the corpus gold
// queries evaluated against them. Returns one line per problem.
std::vector<std::string> validate_fixtures(const FixtureSet& set, const eval::ExperimentMatrix* corpus = nullptr);

} // namespace ontochat::fixtures
