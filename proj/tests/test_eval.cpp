#include "ontochat/eval/corpus.hpp"
#include "ontochat/eval/experiment.hpp"
#include "ontochat/eval/report.hpp"
#include "ontochat/eval/scoring.hpp"
#include "ontochat/fixtures/fixture_set.hpp"
#include "ontochat/llm/provider.hpp"
#include "ontochat/util/io.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace ontochat;
using namespace ontochat::eval;
using nlohmann::json;

namespace {

const fixtures::FixtureSet& fixture_set() {
    static const auto set = fixtures::load_fixture_set(ONTOCHAT_FIXTURE_DIR);
    return set;
}

json corpus_json() { return json::parse(read_file(std::string(ONTOCHAT_FIXTURE_DIR) + "/questions.json")); }

const ExperimentMatrix& matrix() {
    static const auto m = parse_corpus(corpus_json(), fixtures::vocabulary(fixture_set()));
    return m;
}

const QuestionRecord& record(const std::string& id) {
    for (const auto& r : matrix().corpus) {
        if (r.id == id) return r;
    }
    throw std::out_of_range(id);
}

const rdf::Graph& abox(Odp odp) { return fixture_set().get(odp).parts.abox; }

std::vector<CorpusViolation> violations_of(const json& doc) {
    try {
        parse_corpus(doc, fixtures::vocabulary(fixture_set()));
    } catch (const CorpusInvalid& e) {
        return e.violations();
    }
    return {};
}

bool has_violation(const std::vector<CorpusViolation>& vs, const std::string& id, const std::string& fragment) {
    for (const auto& v : vs) {
        if (v.record_id == id && v.reason.find(fragment) != std::string::npos) return true;
    }
    return false;
}

json& find(json& doc, const std::string& id) {
    for (auto& r : doc) {
        if (r["id"] == id) return r;
    }
    throw std::out_of_range(id);
}

} // namespace

TEST_CASE("the shipped corpus is 3 ODPs x 7 categories x 2 phrasings", "[eval]") {
    CHECK(matrix().corpus.size() == 42);
    CHECK(matrix().run_count() == 84);
    CHECK(matrix().corpus.front().id == "vdi3682-boolean-scq");
    CHECK(matrix().corpus.back().id == "vdi2206-twointent-nscq");
}

TEST_CASE("corpus validation collects every violation", "[eval]") {
    auto doc = corpus_json();
    find(doc, "vdi3682-boolean-nscq")["text"] = "Is Mixing assigned to some machine?";
    find(doc, "vdi2206-count-scq")["text"] = "How many things are there?";
    find(doc, "dinen61360-twointent-scq")["gold_queries"].erase(1);
    find(doc, "dinen61360-simple-scq")["gold_queries"][0] = "SELECT ?x WHERE { ?x }";
    find(doc, "vdi2206-simple-nscq")["difficulty"] = "easy";
    doc.erase(doc.begin());
    auto vs = violations_of(doc);
    CHECK(has_violation(vs, "vdi2206-count-scq", "SCQ text uses no vocabulary term"));
    CHECK(has_violation(vs, "dinen61360-twointent-scq", "expected 2 gold queries"));
    CHECK(has_violation(vs, "dinen61360-simple-scq", "does not parse"));
    CHECK(has_violation(vs, "vdi2206-simple-nscq", "unknown field 'difficulty'"));
    CHECK(has_violation(vs, "VDI3682/Boolean/SCQ", "missing record"));
    CHECK(vs.size() == 5);

    auto leak = corpus_json();
    find(leak, "vdi3682-boolean-nscq")["text"] = "Is the mixing step assigned via isAssignedTo?";
    CHECK(has_violation(violations_of(leak), "vdi3682-boolean-nscq", "isAssignedTo"));

    auto dup = corpus_json();
    find(dup, "vdi2206-count-scq")["text"] = find(dup, "vdi2206-rank-scq")["text"];
    // reported on the later record
    CHECK(has_violation(violations_of(dup), "vdi2206-rank-scq", "duplicate question text"));
}

TEST_CASE("scoring by answer equivalence", "[eval]") {
    const auto& rank = record("vdi2206-rank-scq");
    const auto& g = abox(Odp::VDI2206);
    CHECK(score_run(rank.gold_queries, rank, g).correct);

    std::string renamed =
        "PREFIX mech: <http://example.org/odp/vdi2206#>\n"
        "SELECT ?weight ?part WHERE { ?part a mech:Component ; mech:hasMass ?weight } ORDER BY DESC(?weight)";
    CHECK(score_run({renamed}, rank, g).correct);

    std::string ascending =
        "PREFIX mech: <http://example.org/odp/vdi2206#>\n"
        "SELECT ?c ?m WHERE { ?c a mech:Component ; mech:hasMass ?m } ORDER BY ?m";
    auto s = score_run({ascending}, rank, g);
    CHECK_FALSE(s.correct);
    CHECK(s.failure == FailureKind::WrongAnswer);

    std::string empty = "PREFIX mech: <http://example.org/odp/vdi2206#>\nSELECT ?c ?m WHERE { ?c mech:nothing ?m }";
    CHECK(score_run({empty}, rank, g).failure == FailureKind::WrongAnswer);
    CHECK(score_run({"SELECT ?x WHERE { ?x"}, rank, g).failure == FailureKind::TranslationFailed);
    CHECK(score_run({}, rank, g).failure == FailureKind::TranslationFailed);
}

TEST_CASE("only the first query counts outside Two Intent", "[eval]") {
    const auto& simple = record("vdi3682-simple-scq");
    const auto& g = abox(Odp::VDI3682);
    std::string wrong = "ASK { ?s ?p ?o }";
    CHECK(score_run({simple.gold_queries[0], wrong}, simple, g).correct);
    CHECK_FALSE(score_run({wrong, simple.gold_queries[0]}, simple, g).correct);
}

TEST_CASE("Two Intent answers match the gold pair in either order", "[eval]") {
    const auto& two = record("vdi2206-twointent-scq");
    const auto& g = abox(Odp::VDI2206);
    CHECK(score_run(two.gold_queries, two, g).correct);
    CHECK(score_run({two.gold_queries[1], two.gold_queries[0]}, two, g).correct);
    CHECK_FALSE(score_run({two.gold_queries[0]}, two, g).correct);
    CHECK_FALSE(score_run({two.gold_queries[0], two.gold_queries[0]}, two, g).correct);
}

TEST_CASE("percent rounding is half up", "[eval]") {
    CHECK(percent_round_half_up(8, 9) == 89);
    CHECK(percent_round_half_up(4, 9) == 44);
    CHECK(percent_round_half_up(2, 3) == 67);
    CHECK(percent_round_half_up(1, 8) == 13);
    CHECK(percent_round_half_up(1, 200) == 1);
    CHECK(percent_round_half_up(0, 0) == 0);
    CHECK(percent_round_half_up(7, 7) == 100);
    // exhaustive check against exact rational arithmetic
    for (int t = 1; t <= 60; ++t) {
        for (int c = 0; c <= t; ++c) {
            int p = percent_round_half_up(c, t);
            // p - 1/2 <= 100c/t < p + 1/2, i.e. t(2p-1) <= 200c < t(2p+1)
            REQUIRE(t * (2 * p - 1) <= 200 * c);
            REQUIRE(200 * c < t * (2 * p + 1));
        }
    }
}

TEST_CASE("aggregation groups runs into twelve cells", "[eval]") {
    std::vector<RunOutcome> runs;
    auto add = [&](Category c, Phrasing p, bool comments, bool correct) {
        RunOutcome r;
        r.category = c;
        r.phrasing = p;
        r.comments = comments;
        r.correct = correct;
        runs.push_back(r);
    };
    add(Category::Boolean, Phrasing::SCQ, false, true);
    add(Category::Count, Phrasing::SCQ, false, false);
    add(Category::Rank, Phrasing::SCQ, false, true);
    add(Category::TwoIntent, Phrasing::NSCQ, true, true);
    auto cells = aggregate(runs);
    CHECK(cells.size() == 12);
    auto brc = cells.at({Cluster::BooleanCountRank, false, Phrasing::SCQ});
    CHECK(brc.correct == 2);
    CHECK(brc.total == 3);
    CHECK(brc.percent == 67);
    CHECK(cells.at({Cluster::TwoIntent, true, Phrasing::NSCQ}).percent == 100);
    CHECK(cells.at({Cluster::SimpleStringTwoHop, true, Phrasing::SCQ}).total == 0);
}

TEST_CASE("turning a failed run into a correct one never lowers its cell", "[eval]") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<RunOutcome> runs;
        for (int i = 0; i < 20; ++i) {
            RunOutcome r;
            r.category = kCategories[rng() % 7];
            r.phrasing = kPhrasings[rng() % 2];
            r.comments = rng() % 2;
            r.correct = rng() % 2;
            runs.push_back(r);
        }
        auto before = aggregate(runs);
        for (auto& r : runs) {
            if (r.correct) continue;
            r.correct = true;
            auto after = aggregate(runs);
            for (const auto& [key, cell] : before) REQUIRE(after.at(key).percent >= cell.percent);
            break;
        }
    }
}

TEST_CASE("the gold-echo mock scores every cell at 100%", "[eval]") {
    auto provider = llm::make_provider(llm::load_provider_config(std::string(ONTOCHAT_FIXTURE_DIR) + "/provider.mock.json"));
    auto report = run_experiment(matrix(), fixture_set(), *provider);
    REQUIRE(report.runs.size() == 84);
    CHECK(report.runs[0].question_id == "vdi3682-boolean-scq");
    CHECK_FALSE(report.runs[0].comments);
    CHECK(report.runs[1].comments);
    for (const auto& [key, cell] : report.aggregate) {
        // three categories per cluster across three ODPs; Two Intent is one category
        CHECK(cell.total == (key.cluster == Cluster::TwoIntent ? 3 : 9));
        CHECK(cell.percent == 100);
    }
}

TEST_CASE("parallel runs produce the same report as sequential ones", "[eval]") {
    auto provider = llm::make_provider(llm::load_provider_config(std::string(ONTOCHAT_FIXTURE_DIR) + "/provider.mock.json"));
    ExperimentOptions parallel;
    parallel.jobs = 4;
    auto a = to_json(run_experiment(matrix(), fixture_set(), *provider));
    auto b = to_json(run_experiment(matrix(), fixture_set(), *provider, parallel));
    CHECK(a == b);
}

TEST_CASE("provider failures become TranslationFailed outcomes", "[eval]") {
    llm::ScriptedProvider broken([](const llm::ProviderRequest&) -> std::string { throw llm::ProviderError("down"); });
    auto report = run_experiment(matrix(), fixture_set(), broken);
    for (const auto& r : report.runs) {
        CHECK_FALSE(r.correct);
        CHECK(r.failure_kind == FailureKind::TranslationFailed);
    }
}

TEST_CASE("reports in three formats", "[eval]") {
    RunReport report;
    report.template_version = "tbox-sparql/1";
    RunOutcome r;
    r.question_id = "x";
    r.category = Category::Count;
    r.correct = true;
    report.runs = {r};
    report.aggregate = aggregate(report.runs);

    auto md = render_report(report, ReportFormat::Markdown);
    CHECK(md.find("| Categories | w/o comments SCQs | w/o comments NSCQs | commented SCQs | commented NSCQs |") !=
          std::string::npos);
    CHECK(md.find("| Boolean, Count, Rank | 100% |") != std::string::npos);

    auto csv = render_report(report, ReportFormat::Csv);
    CHECK(csv.rfind("cluster,comments,phrasing,correct,total,percent\n", 0) == 0);
    CHECK(csv.find("\"Boolean, Count, Rank\",false,SCQ,1,1,100") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);

    auto js = json::parse(render_report(report, ReportFormat::Json));
    CHECK(js["template_version"] == "tbox-sparql/1");
    CHECK(js["runs"].size() == 1);
}
