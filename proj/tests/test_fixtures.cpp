#include "ontochat/eval/corpus.hpp"
#include "ontochat/fixtures/fixture_set.hpp"
#include "ontochat/ontology/partition.hpp"
#include "ontochat/rdf/vocab.hpp"
#include "ontochat/sparql/parser.hpp"
#include "ontochat/util/io.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace ontochat;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = ONTOCHAT_FIXTURE_DIR;

// A scratch copy of the fixture directory with one file edited.
fs::path mutated_copy(const std::string& file, const std::string& from, const std::string& to) {
    fs::path dir = fs::temp_directory_path() / ("ontochat-fixtures-" + std::to_string(std::hash<std::string>{}(file + from + to)));
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (const auto& entry : fs::directory_iterator(kDir)) fs::copy_file(entry.path(), dir / entry.path().filename());
    std::string text = read_file(dir / file);
    auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
    write_file(dir / file, text);
    return dir;
}

bool mentions(const std::vector<std::string>& diags, const std::string& fragment) {
    return std::any_of(diags.begin(), diags.end(), [&](const std::string& d) { return d.find(fragment) != std::string::npos; });
}

} // namespace

TEST_CASE("shipped fixtures and gold queries validate cleanly", "[fixtures]") {
    auto set = fixtures::load_fixture_set(kDir);
    auto corpus = eval::load_corpus(kDir / "questions.json", fixtures::vocabulary(set));
    auto diags = fixtures::validate_fixtures(set, &corpus);
    for (const auto& d : diags) UNSCOPED_INFO(d);
    CHECK(diags.empty());
}

TEST_CASE("each fixture has a non-empty TBox and a small ABox", "[fixtures]") {
    auto set = fixtures::load_fixture_set(kDir);
    REQUIRE(set.ontologies.size() == 3);
    for (const auto& f : set.ontologies) {
        INFO(f.path);
        CHECK(f.parts.tbox.size() > 0);
        CHECK(f.parts.abox.size() >= 15);
        CHECK(f.parts.abox.size() <= 40);
        CHECK(f.parts.diagnostics.empty());
    }
}

TEST_CASE("stripping comments removes one triple per schema entity", "[fixtures]") {
    auto set = fixtures::load_fixture_set(kDir);
    for (const auto& f : set.ontologies) {
        INFO(f.path);
        auto stripped = ontology::apply_comment_policy(f.parts.tbox, ontology::CommentPolicy::Strip);
        CHECK(f.parts.tbox.size() - stripped.size() == f.parts.schema_entities.size());
        CHECK(ontology::count_comments(stripped) == 0);
    }
}

TEST_CASE("every gold query evaluates within the supported subset", "[fixtures]") {
    auto set = fixtures::load_fixture_set(kDir);
    auto corpus = eval::load_corpus(kDir / "questions.json", fixtures::vocabulary(set));
    std::map<eval::Odp, int> per_odp;
    for (const auto& rec : corpus.corpus) per_odp[rec.odp] += 1;
    for (eval::Odp o : eval::kOdps) CHECK(per_odp[o] == 14);
}

TEST_CASE("a class without a comment is reported by IRI", "[fixtures]") {
    auto dir = mutated_copy("vdi2206.ttl", "rdfs:comment", "rdfs:seeAlso");
    auto diags = fixtures::validate_fixtures(fixtures::load_fixture_set(dir));
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].find("http://example.org/odp/vdi2206#") != std::string::npos);
    CHECK(diags[0].find("0 rdfs:comment") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("missing required vocabulary is reported", "[fixtures]") {
    auto dir = mutated_copy("vdi3682.ttl", "fpd:isAssignedTo", "fpd:isBoundTo");
    auto diags = fixtures::validate_fixtures(fixtures::load_fixture_set(dir));
    CHECK(mentions(diags, "missing property isAssignedTo"));
    fs::remove_all(dir);
}

TEST_CASE("a Rank gold query with too few rows is non-discriminative", "[fixtures]") {
    auto set = fixtures::load_fixture_set(kDir);
    auto corpus = eval::load_corpus(kDir / "questions.json", fixtures::vocabulary(set));
    for (auto& rec : corpus.corpus) {
        if (rec.id == "vdi2206-rank-scq") {
            rec.gold_queries[0] += " LIMIT 1";
            rec.gold_parsed[0] = sparql::parse_query(rec.gold_queries[0]);
        }
    }
    auto diags = fixtures::validate_fixtures(set, &corpus);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].find("vdi2206-rank-scq") != std::string::npos);
    CHECK(diags[0].find("non-discriminative Rank fixture") != std::string::npos);
}

TEST_CASE("a false Boolean gold query is reported", "[fixtures]") {
    auto set = fixtures::load_fixture_set(kDir);
    auto corpus = eval::load_corpus(kDir / "questions.json", fixtures::vocabulary(set));
    for (auto& rec : corpus.corpus) {
        if (rec.id == "vdi3682-boolean-scq") rec.gold_parsed[0] = sparql::parse_query("ASK { <urn:x> <urn:y> <urn:z> }");
    }
    CHECK(mentions(fixtures::validate_fixtures(set, &corpus), "ASK is false"));
}
