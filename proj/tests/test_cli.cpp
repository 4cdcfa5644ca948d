#include "ontochat/rdf/turtle.hpp"
#include "ontochat/util/io.hpp"

#include <catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using nlohmann::json;
using ontochat::write_file;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = ONTOCHAT_FIXTURE_DIR;

struct Run {
    int status = -1;
    std::string out;
};

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Run run(const std::string& program, const std::vector<std::string>& args, const std::string& stdin_file = {}) {
    std::string cmd = quote(program);
    for (const auto& a : args) cmd += " " + quote(a);
    if (!stdin_file.empty()) cmd += " < " + quote(stdin_file);
    cmd += " 2>/dev/null";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

Run cli(const std::vector<std::string>& args, const std::string& stdin_file = {}) {
    return run(ONTOCHAT_CLI, args, stdin_file);
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("ontochat-cli-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("usage errors exit 64", "[cli]") {
    CHECK(cli({}).status == 64);
    CHECK(cli({"frobnicate"}).status == 64);
    CHECK(cli({"query", (kDir / "vdi3682.ttl").string()}).status == 64);
    CHECK(cli({"--help"}).status == 0);
}

TEST_CASE("file and data errors exit 66 and 65", "[cli]") {
    auto dir = scratch("errors");
    CHECK(cli({"partition", (dir / "missing.ttl").string()}).status == 66);
    write_file(dir / "bad.ttl", "@prefix ex: <http://e/> .\nex:a ex:b .\n");
    CHECK(cli({"partition", (dir / "bad.ttl").string()}).status == 65);
    write_file(dir / "bad.rq", "SELECT ?x WHERE { ?x");
    CHECK(cli({"query", (kDir / "vdi3682.ttl").string(), (dir / "bad.rq").string()}).status == 65);
    write_file(dir / "provider.json", R"({"kind":"mock","mapping":"m.json","api_key":"x"})");
    CHECK(cli({"ask", (kDir / "vdi3682.ttl").string(), "Anything?", "--provider", (dir / "provider.json").string()}).status == 78);
    fs::remove_all(dir);
}

TEST_CASE("partition of an empty file writes empty outputs", "[cli]") {
    auto dir = scratch("empty");
    write_file(dir / "empty.ttl", "");
    auto r = cli({"partition", (dir / "empty.ttl").string()});
    REQUIRE(r.status == 0);
    auto out = json::parse(r.out);
    CHECK(out["tbox_triples"] == 0);
    CHECK(out["abox_triples"] == 0);
    CHECK(ontochat::rdf::load_turtle_file(dir / "empty.tbox.ttl").graph.empty());
    CHECK(ontochat::rdf::load_turtle_file(dir / "empty.abox.ttl").graph.empty());
    fs::remove_all(dir);
}

TEST_CASE("partition splits a fixture and strips comments", "[cli]") {
    auto dir = scratch("partition");
    auto r = cli({"partition", (kDir / "vdi2206.ttl").string(), "--strip-comments", "--out-dir", dir.string()});
    REQUIRE(r.status == 0);
    auto out = json::parse(r.out);
    auto source = ontochat::rdf::load_turtle_file(kDir / "vdi2206.ttl").graph;
    auto tbox = ontochat::rdf::load_turtle_file(dir / "vdi2206.tbox.ttl").graph;
    auto abox = ontochat::rdf::load_turtle_file(dir / "vdi2206.abox.ttl").graph;
    CHECK(out["tbox_triples"] == tbox.size());
    CHECK(out["abox_triples"] == abox.size());
    CHECK(tbox.size() + abox.size() + out["comments_removed"].get<std::size_t>() == source.size());
    CHECK(out["comments_removed"] == out["schema_entities"]);
    fs::remove_all(dir);
}

TEST_CASE("query ranks data element values in ascending order", "[cli]") {
    auto dir = scratch("query");
    write_file(dir / "rank.rq",
               "PREFIX de: <http://example.org/odp/dinen61360#>\n"
               "SELECT ?e ?v WHERE { ?e de:hasValue ?v } ORDER BY ?v\n");
    auto r = cli({"query", (kDir / "dinen61360.ttl").string(), (dir / "rank.rq").string()});
    REQUIRE(r.status == 0);
    auto bindings = json::parse(r.out)["results"]["bindings"];

    auto graph = ontochat::rdf::load_turtle_file(kDir / "dinen61360.ttl").graph;
    auto values = graph.match({std::nullopt, ontochat::rdf::Term::iri("http://example.org/odp/dinen61360#hasValue"), std::nullopt});
    std::vector<double> expected;
    for (const auto& t : values) expected.push_back(std::stod(t.object.value()));
    std::sort(expected.begin(), expected.end());

    REQUIRE(bindings.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(std::stod(bindings[i]["v"]["value"].get<std::string>()) == expected[i]);
    }

    auto piped = cli({"query", (kDir / "dinen61360.ttl").string(), "-"}, (dir / "rank.rq").string());
    CHECK(piped.status == 0);
    CHECK(piped.out == r.out);
    fs::remove_all(dir);
}

TEST_CASE("ask prints the answer and maps statuses to exit codes", "[cli]") {
    auto answered = cli({"ask", (kDir / "vdi2206.ttl").string(), "How many components are part of the gripper module?",
                         "--provider", (kDir / "provider.mock.json").string(), "--json"});
    CHECK(answered.status == 0);
    auto rec = json::parse(answered.out);
    CHECK(rec["status"] == "Answered");

    auto dir = scratch("ask");
    write_file(dir / "junk.json", R"({"Anything?": "this is not SPARQL"})");
    write_file(dir / "provider.json", R"({"kind":"mock","mapping":"junk.json"})");
    auto failed = cli({"ask", (kDir / "vdi2206.ttl").string(), "Anything?", "--provider", (dir / "provider.json").string()});
    CHECK(failed.status == 2);
    CHECK(failed.out.find("Attempts: 3") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("eval rejects an invalid corpus", "[cli]") {
    auto dir = scratch("eval-invalid");
    auto doc = json::parse(ontochat::read_file(kDir / "questions.json"));
    doc.erase(doc.begin());
    write_file(dir / "questions.json", doc.dump());
    auto r = cli({"eval", "--corpus", (dir / "questions.json").string(), "--fixtures", kDir.string(), "--provider",
                  (kDir / "provider.mock.json").string(), "--out", (dir / "out").string()});
    CHECK(r.status == 65);
    CHECK_FALSE(fs::exists(dir / "out" / "report.json"));
    fs::remove_all(dir);
}

TEST_CASE("eval is idempotent", "[cli]") {
    auto dir = scratch("eval-twice");
    std::vector<std::string> args = {"eval", "--corpus", (kDir / "questions.json").string(), "--fixtures", kDir.string(),
                                     "--provider", (kDir / "provider.replay.json").string()};
    auto a = args, b = args;
    a.insert(a.end(), {"--out", (dir / "a").string()});
    b.insert(b.end(), {"--out", (dir / "b").string(), "--jobs", "4"});
    REQUIRE(cli(a).status == 0);
    REQUIRE(cli(b).status == 0);
    for (const char* f : {"report.json", "report.md", "report.csv"}) {
        INFO(f);
        CHECK(ontochat::read_file(dir / "a" / f) == ontochat::read_file(dir / "b" / f));
    }
    fs::remove_all(dir);
}

TEST_CASE("the shipped replay cassette is reproducible from its authoring plan", "[cli]") {
    auto dir = scratch("cassette");
    auto r = run(ONTOCHAT_AUTHOR_CASSETTE, {"--plan", (kDir / "reference_plan.json").string(), "--corpus",
                                            (kDir / "questions.json").string(), "--fixtures", kDir.string(), "--out",
                                            (dir / "cassette.json").string()});
    REQUIRE(r.status == 0);
    CHECK(ontochat::read_file(dir / "cassette.json") == ontochat::read_file(kDir / "reference_cassette.json"));
    fs::remove_all(dir);
}
