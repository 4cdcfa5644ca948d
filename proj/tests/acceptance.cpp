// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include "ontochat/eval/corpus.hpp"
#include "ontochat/fixtures/fixture_set.hpp"
#include "ontochat/eval/experiment.hpp"
#include "ontochat/llm/prompt.hpp"
#include "ontochat/llm/provider.hpp"
#include "ontochat/ontology/partition.hpp"
#include "ontochat/rdf/turtle.hpp"
#include "ontochat/sparql/evaluator.hpp"
#include "ontochat/sparql/parser.hpp"
#include "ontochat/util/io.hpp"

#include "oracle.hpp"
#include "random_graph.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace ontochat;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = ONTOCHAT_FIXTURE_DIR;
const std::string kRdfsComment = "http://www.w3.org/2000/01/rdf-schema#comment";

struct Verdict {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int n, const std::string& name, const Verdict& v) {
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << name << " (" << v.detail << ")" << std::endl;
    if (!v.pass) ++failures;
}

template <typename F>
void criterion(int n, const std::string& name, F&& body) {
    try {
        report(n, name, body());
    } catch (const std::exception& e) {
        report(n, name, {false, std::string("exception: ") + e.what()});
    }
}

int run_cli(const std::vector<std::string>& args) {
    std::string cmd = ONTOCHAT_CLI;
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " > /dev/null 2>&1";
    int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("ontochat-acceptance-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::string> eval_args(const std::string& provider, const fs::path& out) {
    return {"eval", "--corpus", (kDir / "questions.json").string(), "--fixtures", kDir.string(), "--provider",
            (kDir / provider).string(), "--out", out.string()};
}

// Cell percentages recomputed from the per-run records of a report, keyed
// "cluster|comments|phrasing".
std::map<std::string, int> percents_from_runs(const json& report) {
    auto cluster = [](const std::string& category) {
        if (category == "Boolean" || category == "Count" || category == "Rank") return std::string("BCR");
        if (category == "TwoIntent") return std::string("TI");
        return std::string("SST");
    };
    std::map<std::string, std::pair<int, int>> counts;
    for (const auto& r : report["runs"]) {
        auto& c = counts[cluster(r["category"]) + "|" + (r["comments"].get<bool>() ? "c" : "n") + "|" +
                         r["phrasing"].get<std::string>()];
        c.first += r["correct"].get<bool>() ? 1 : 0;
        c.second += 1;
    }
    std::map<std::string, int> out;
    for (const auto& [key, c] : counts) {
        // nearest integer percent, halves rounded up, in exact integer arithmetic
        out[key] = (200 * c.first + c.second) / (2 * c.second);
    }
    return out;
}

std::string row_key(const std::string& cluster, bool comments, const std::string& phrasing) {
    return cluster + "|" + (comments ? "c" : "n") + "|" + phrasing;
}

// The expected cells, in table order: SCQ/NSCQ without comments, then SCQ/NSCQ commented.
const std::vector<std::pair<std::string, std::array<int, 4>>> kReferenceCells = {
    {"BCR", {100, 100, 100, 100}},
    {"SST", {89, 44, 100, 78}},
    {"TI", {67, 0, 100, 67}},
};

std::string cell_summary(const std::map<std::string, int>& p) {
    std::ostringstream out;
    for (const auto& [cluster, _] : kReferenceCells) {
        out << "(";
        bool first = true;
        for (bool comments : {false, true}) {
            for (const char* ph : {"SCQ", "NSCQ"}) {
                auto it = p.find(row_key(cluster, comments, ph));
                out << (first ? "" : ",") << (it == p.end() ? -1 : it->second);
                first = false;
            }
        }
        out << ")";
    }
    return out.str();
}

bool matches_reference(const std::map<std::string, int>& p) {
    for (const auto& [cluster, want] : kReferenceCells) {
        int i = 0;
        for (bool comments : {false, true}) {
            for (const char* ph : {"SCQ", "NSCQ"}) {
                auto it = p.find(row_key(cluster, comments, ph));
                if (it == p.end() || it->second != want[i]) return false;
                ++i;
            }
        }
    }
    return true;
}

std::map<std::string, int> percents_from_aggregate(const json& report) {
    std::map<std::string, int> out;
    for (const auto& c : report["aggregate"]) {
        std::string cl = c["cluster"];
        std::string key = cl == "Boolean, Count, Rank" ? "BCR" : cl == "Two Intent" ? "TI" : "SST";
        out[row_key(key, c["comments"], c["phrasing"])] = c["percent"];
    }
    return out;
}

// Individuals found by a direct scan: every IRI in an ABox triple that the
// TBox never mentions, outside the W3C namespaces.
std::set<std::string> scan_individuals(const rdf::Graph& tbox, const rdf::Graph& abox) {
    std::set<std::string> schema_iris;
    for (const auto& t : tbox) {
        for (const auto* term : {&t.subject, &t.predicate, &t.object}) {
            if (term->is_iri()) schema_iris.insert(term->value());
        }
    }
    std::set<std::string> out;
    for (const auto& t : abox) {
        for (const auto* term : {&t.subject, &t.object}) {
            if (!term->is_iri() || schema_iris.count(term->value())) continue;
            const std::string& v = term->value();
            if (v.rfind("http://www.w3.org/", 0) == 0) continue;
            out.insert(v);
        }
    }
    return out;
}

Verdict oracle_equivalence() {
    std::mt19937 rng(500500);
    int cases = 0, mismatches = 0, non_empty = 0, filtered = 0;
    auto start = std::chrono::steady_clock::now();
    for (; cases < 600; ++cases) {
        auto graph = testsupport::random_data_graph(rng, 30);
        auto oq = testsupport::random_bgp_query(rng, cases % 4 != 0 ? &graph : nullptr);
        auto expected = testsupport::brute_force(oq, graph);
        non_empty += expected.empty() ? 0 : 1;
        filtered += oq.filter ? 1 : 0;
        auto rs = sparql::evaluate(sparql::parse_query(testsupport::to_sparql(oq)), graph);
        std::vector<testsupport::OracleRow> got;
        for (const auto& row : rs.rows()) {
            testsupport::OracleRow r;
            for (const auto& cell : row) r.push_back(*cell);
            got.push_back(std::move(r));
        }
        std::sort(got.begin(), got.end());
        if (got != expected) ++mismatches;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {mismatches == 0 && secs < 60,
            std::to_string(cases) + " cases (" + std::to_string(non_empty) + " with rows, " + std::to_string(filtered) +
                " filtered), " + std::to_string(mismatches) + " mismatches, " + std::to_string(secs) + " s"};
}

double replay_seconds = -1;

Verdict reference_replay() {
    auto dir = scratch("reference");
    auto start = std::chrono::steady_clock::now();
    int rc1 = run_cli(eval_args("provider.replay.json", dir / "a"));
    replay_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int rc2 = run_cli(eval_args("provider.replay.json", dir / "b"));
    if (rc1 != 0 || rc2 != 0) return {false, "eval exited " + std::to_string(rc1) + "/" + std::to_string(rc2)};
    std::string a = read_file(dir / "a" / "report.json");
    std::string b = read_file(dir / "b" / "report.json");
    auto doc = json::parse(a);
    auto from_runs = percents_from_runs(doc);
    auto from_cells = percents_from_aggregate(doc);
    std::string md = read_file(dir / "a" / "report.md");
    bool md_ok = md.find("| Boolean, Count, Rank | 100% | 100% | 100% | 100% |") != std::string::npos &&
                 md.find("| Simple, String, Two Hop | 89% | 44% | 100% | 78% |") != std::string::npos &&
                 md.find("| Two Intent | 67% | 0% | 100% | 67% |") != std::string::npos;
    bool ok = a == b && doc["run_count"] == 84 && matches_reference(from_runs) && from_runs == from_cells && md_ok;
    fs::remove_all(dir);
    return {ok, "cells " + cell_summary(from_runs) + ", report.md " + (md_ok ? "matches" : "differs") +
                    ", report.json " + (a == b ? "byte-identical" : "differs") + " across two runs"};
}

Verdict corpus_shape() {
    auto set = fixtures::load_fixture_set(kDir);
    auto matrix = eval::load_corpus(kDir / "questions.json", fixtures::vocabulary(set));
    std::map<eval::Odp, std::set<eval::Category>> categories;
    std::map<eval::Odp, int> records;
    for (const auto& r : matrix.corpus) {
        categories[r.odp].insert(r.category);
        ++records[r.odp];
    }
    bool ok = matrix.corpus.size() == 42 && matrix.run_count() == 84 && categories.size() == 3;
    for (const auto& [odp, cats] : categories) ok = ok && cats.size() == 7 && records[odp] == 14;
    return {ok, std::to_string(matrix.corpus.size()) + " records, " + std::to_string(matrix.run_count()) + " runs, " +
                    std::to_string(categories.size()) + " ODPs x " +
                    std::to_string(categories.empty() ? 0 : categories.begin()->second.size()) + " categories"};
}

Verdict privacy() {
    auto set = fixtures::load_fixture_set(kDir);
    auto matrix = eval::load_corpus(kDir / "questions.json", fixtures::vocabulary(set));
    std::vector<std::string> individuals;
    for (const auto& f : set.ontologies) {
        // independent re-partition from the file, then a direct scan
        auto graph = rdf::load_turtle_file(f.path).graph;
        auto parts = ontology::partition(graph);
        for (const auto& iri : scan_individuals(parts.tbox, parts.abox)) individuals.push_back(iri);
    }
    auto replay = llm::make_provider(llm::load_provider_config(kDir / "provider.replay.json"));
    std::mutex mu;
    int prompts = 0, violations = 0;
    llm::ScriptedProvider spy([&](const llm::ProviderRequest& req) {
        std::string bytes = req.prompt.render();
        {
            std::lock_guard<std::mutex> lock(mu);
            ++prompts;
            for (const auto& iri : individuals) {
                if (bytes.find(iri) != std::string::npos) ++violations;
            }
        }
        return replay->complete(req);
    });
    auto result = eval::run_experiment(matrix, set, spy);
    bool ok = result.runs.size() == 84 && violations == 0 && !individuals.empty();
    return {ok, std::to_string(result.runs.size()) + " runs, " + std::to_string(prompts) + " prompts, " +
                    std::to_string(individuals.size()) + " individual IRIs, " + std::to_string(violations) + " violations"};
}

bool partition_sound(const rdf::Graph& source) {
    auto parts = ontology::partition(source);
    std::set<rdf::Triple> src(source.begin(), source.end());
    std::set<rdf::Triple> tbox(parts.tbox.begin(), parts.tbox.end());
    std::set<rdf::Triple> abox(parts.abox.begin(), parts.abox.end());
    std::set<rdf::Triple> both;
    std::set_intersection(tbox.begin(), tbox.end(), abox.begin(), abox.end(), std::inserter(both, both.end()));
    std::set<rdf::Triple> all = tbox;
    all.insert(abox.begin(), abox.end());
    return both.empty() && all == src;
}

Verdict partition_invariant() {
    int graphs = 0, violations = 0;
    for (const char* f : {"vdi3682.ttl", "dinen61360.ttl", "vdi2206.ttl"}) {
        ++graphs;
        if (!partition_sound(rdf::load_turtle_file(kDir / f).graph)) ++violations;
    }
    std::mt19937 rng(4242);
    for (int i = 0; i < 200; ++i) {
        ++graphs;
        if (!partition_sound(testsupport::random_ontology(rng))) ++violations;
    }
    return {violations == 0, std::to_string(graphs) + " graphs, " + std::to_string(violations) + " violations"};
}

Verdict prompt_determinism() {
    auto set_a = fixtures::load_fixture_set(kDir);
    auto set_b = fixtures::load_fixture_set(kDir);
    auto matrix = eval::load_corpus(kDir / "questions.json", fixtures::vocabulary(set_a));
    int comparisons = 0, diffs = 0;
    for (const auto& rec : matrix.corpus) {
        for (auto policy : {ontology::CommentPolicy::Strip, ontology::CommentPolicy::Retain}) {
            auto tbox_a = ontology::render_prompt_tbox(ontology::apply_comment_policy(set_a.get(rec.odp).parts.tbox, policy));
            auto tbox_b = ontology::render_prompt_tbox(ontology::apply_comment_policy(set_b.get(rec.odp).parts.tbox, policy));
            auto a = llm::assemble_prompt(tbox_a, rec.text);
            auto b = llm::assemble_prompt(tbox_b, rec.text);
            comparisons += 2;
            if (a.render() != b.render()) ++diffs;
            if (a.hash() != b.hash()) ++diffs;
        }
    }
    return {diffs == 0 && comparisons == 168,
            std::to_string(comparisons / 2) + " prompts x 2 comparisons, " + std::to_string(diffs) + " diffs"};
}

Verdict comment_stripping() {
    int diffs = 0;
    std::ostringstream detail;
    for (const char* f : {"vdi3682.ttl", "dinen61360.ttl", "vdi2206.ttl"}) {
        auto parts = ontology::partition(rdf::load_turtle_file(kDir / f).graph);
        std::size_t scanned = 0;
        for (const auto& t : parts.tbox) {
            if (t.predicate.is_iri() && t.predicate.value() == kRdfsComment) ++scanned;
        }
        auto stripped = ontology::apply_comment_policy(parts.tbox, ontology::CommentPolicy::Strip);
        std::size_t removed = parts.tbox.size() - stripped.size();
        if (removed != scanned) ++diffs;
        detail << f << " " << removed << "/" << scanned << ", ";
    }
    detail << diffs << " diffs";
    return {diffs == 0, detail.str()};
}

Verdict mock_upper_bound() {
    auto dir = scratch("mock");
    int rc = run_cli(eval_args("provider.mock.json", dir));
    if (rc != 0) return {false, "eval exited " + std::to_string(rc)};
    auto doc = json::parse(read_file(dir / "report.json"));
    auto p = percents_from_runs(doc);
    auto cells = percents_from_aggregate(doc);
    int full = 0;
    for (const auto& [key, v] : p) full += v == 100 ? 1 : 0;
    fs::remove_all(dir);
    return {p.size() == 12 && full == 12 && cells == p, std::to_string(full) + "/12 cells at 100%"};
}

Verdict runtime() {
    if (replay_seconds < 0) {
        auto dir = scratch("runtime");
        auto start = std::chrono::steady_clock::now();
        run_cli(eval_args("provider.replay.json", dir));
        replay_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        fs::remove_all(dir);
    }
    return {replay_seconds < 10, "84-run replay experiment in " + std::to_string(replay_seconds) + " s"};
}

} // namespace

int main() {
    criterion(1, "SPARQL evaluation equals brute-force enumeration", oracle_equivalence);
    criterion(2, "reference cells reproduced by replay", reference_replay);
    criterion(3, "corpus shape", corpus_shape);
    criterion(4, "no individual IRI in any prompt", privacy);
    criterion(5, "TBox and ABox partition their source", partition_invariant);
    criterion(6, "prompt assembly is deterministic", prompt_determinism);
    criterion(7, "comment stripping removes exactly the comments", comment_stripping);
    criterion(8, "gold-echo mock scores 100% everywhere", mock_upper_bound);
    criterion(9, "replay experiment runtime", runtime);
    return failures == 0 ? 0 : 1;
}
