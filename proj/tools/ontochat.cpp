#include "ontochat/chat/http_api.hpp"
#include "ontochat/chat/registry.hpp"
#include "ontochat/chat/service.hpp"
#include "ontochat/eval/corpus.hpp"
#include "ontochat/eval/experiment.hpp"
#include "ontochat/eval/report.hpp"
#include "ontochat/fixtures/fixture_set.hpp"
#include "ontochat/llm/provider.hpp"
#include "ontochat/ontology/partition.hpp"
#include "ontochat/rdf/turtle.hpp"
#include "ontochat/sparql/evaluator.hpp"
#include "ontochat/sparql/parser.hpp"
#include "ontochat/util/io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <iterator>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ontochat;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitConfig = 78;

struct ExitCode {
    int code;
};

llm::ProviderConfig provider_config(const std::string& flag) {
    fs::path path = flag;
    if (path.empty()) {
        if (!fs::exists("provider.json")) {
            std::cerr << "error: no --provider given and ./provider.json does not exist\n";
            throw ExitCode{kExitUsage};
        }
        path = "provider.json";
    }
    return llm::load_provider_config(path);
}

int cmd_partition(const std::string& file, bool strip, const std::string& out_dir) {
    auto doc = rdf::load_turtle_file(file);
    auto parts = ontology::partition(doc.graph);
    rdf::Graph tbox = parts.tbox;
    std::size_t removed = 0;
    if (strip) {
        tbox = ontology::apply_comment_policy(parts.tbox, ontology::CommentPolicy::Strip);
        removed = parts.tbox.size() - tbox.size();
    }
    fs::path in(file);
    fs::path dir = out_dir.empty() ? in.parent_path() : fs::path(out_dir);
    fs::path tbox_path = dir / (in.stem().string() + ".tbox.ttl");
    fs::path abox_path = dir / (in.stem().string() + ".abox.ttl");
    write_file(tbox_path, rdf::serialize_turtle(tbox));
    write_file(abox_path, rdf::serialize_turtle(parts.abox));

    std::vector<std::string> diagnostics = doc.diagnostics;
    diagnostics.insert(diagnostics.end(), parts.diagnostics.begin(), parts.diagnostics.end());
    json out = {
        {"tbox_triples", tbox.size()},
        {"abox_triples", parts.abox.size()},
        {"schema_entities", parts.schema_entities.size()},
        {"comments_removed", removed},
        {"tbox_file", tbox_path.string()},
        {"abox_file", abox_path.string()},
        {"diagnostics", diagnostics},
    };
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_query(const std::string& file, const std::string& query_path) {
    auto doc = rdf::load_turtle_file(file);
    std::string text;
    if (query_path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        text = read_file(query_path);
    }
    auto query = sparql::parse_query(text);
    std::cout << sparql::to_sparql_json(sparql::evaluate(query, doc.graph)).dump(2) << "\n";
    return 0;
}

void print_trace(const llm::TranslationResult& t) {
    std::cout << "Attempts: " << t.attempts.size() << "\n";
    for (const auto& a : t.attempts) {
        std::cout << "  #" << a.number << " prompt " << a.prompt_hash.substr(0, 12) << ": "
                  << (a.parse_error ? "rejected (" + *a.parse_error + ")" : std::string("accepted")) << "\n";
    }
}

int cmd_ask(const std::string& file, const std::string& question, bool no_comments, const std::string& provider_flag,
            bool as_json, int max_attempts) {
    auto provider = llm::make_provider(provider_config(provider_flag));
    chat::OntologyRegistry registry;
    fs::path path(file);
    registry.add(path.stem().string(), rdf::load_turtle_file(path).graph, path);
    const auto& ontology = registry.get(path.stem().string());

    chat::AnswerOptions options;
    options.max_attempts = max_attempts;
    chat::AnswerRecord record;
    try {
        record = chat::answer_question(ontology, no_comments ? ontology::CommentPolicy::Strip : ontology::CommentPolicy::Retain,
                                       question, *provider, options);
    } catch (const llm::ProviderError& e) {
        std::cerr << "provider error: " << e.what() << "\n";
        return 2;
    }

    if (as_json) {
        std::cout << chat::to_json(record).dump(2) << "\n";
    } else {
        std::cout << "Status: " << chat::to_string(record.status) << "\n";
        for (std::size_t i = 0; i < record.translation.final_queries.size(); ++i) {
            std::cout << "\nGenerated query" << (record.translation.final_queries.size() > 1 ? " " + std::to_string(i + 1) : "")
                      << ":\n" << record.translation.final_queries[i] << "\n";
        }
        if (!record.answer_table.empty()) std::cout << "\n" << record.answer_table;
        if (!record.error.empty()) std::cout << "\nError: " << record.error << "\n";
        std::cout << "\n";
        print_trace(record.translation);
    }
    switch (record.status) {
    case chat::AnswerStatus::Answered:
    case chat::AnswerStatus::EmptyResult: return 0;
    case chat::AnswerStatus::TranslationFailed: return 2;
    case chat::AnswerStatus::ExecutionFailed: return 3;
    }
    return 0;
}

int cmd_serve(const std::string& config_path) {
    auto config = chat::load_service_config(config_path);
    if (!chat::serve(config)) {
        std::cerr << "error: cannot listen on " << config.host << ":" << config.port << "\n";
        return 1;
    }
    return 0;
}

int cmd_eval(const std::string& corpus_path, const std::string& fixture_dir, const std::string& provider_flag,
             const std::string& out_dir, int jobs, int max_attempts, const std::string& record_path) {
    auto fixture_set = fixtures::load_fixture_set(fixture_dir);
    eval::ExperimentMatrix matrix;
    try {
        matrix = eval::load_corpus(corpus_path, fixtures::vocabulary(fixture_set));
    } catch (const eval::CorpusInvalid& e) {
        std::cerr << e.what() << "\n";
        return kExitData;
    }
    auto diagnostics = fixtures::validate_fixtures(fixture_set, &matrix);
    if (!diagnostics.empty()) {
        std::cerr << "fixture validation failed:\n";
        for (const auto& d : diagnostics) std::cerr << "  " << d << "\n";
        return kExitData;
    }

    auto base = llm::make_provider(provider_config(provider_flag));
    std::shared_ptr<llm::RecordingProvider> recorder;
    std::shared_ptr<llm::Provider> provider = base;
    if (!record_path.empty()) {
        recorder = std::make_shared<llm::RecordingProvider>(base);
        provider = recorder;
    }
    eval::ExperimentOptions options;
    options.jobs = jobs;
    options.max_attempts = max_attempts;
    auto report = eval::run_experiment(matrix, fixture_set, *provider, options);

    fs::path out(out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError(out, ec.message());
    write_file(out / "report.md", eval::render_report(report, eval::ReportFormat::Markdown));
    write_file(out / "report.csv", eval::render_report(report, eval::ReportFormat::Csv));
    write_file(out / "report.json", eval::render_report(report, eval::ReportFormat::Json));
    if (recorder) write_file(record_path, llm::cassette_to_json(recorder->entries()).dump(2) + "\n");

    std::cout << "| Categories | w/o comments SCQs | w/o comments NSCQs | commented SCQs | commented NSCQs |\n";
    for (eval::Cluster c : eval::kClusters) {
        std::cout << "| " << eval::to_string(c);
        for (bool comments : {false, true}) {
            for (eval::Phrasing p : eval::kPhrasings) {
                const auto& cell = report.aggregate.at({c, comments, p});
                std::cout << " | " << cell.percent << "% (" << cell.correct << "/" << cell.total << ")";
            }
        }
        std::cout << " |\n";
    }
    std::cout << report.runs.size() << " runs; reports written to " << out.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ask questions about OWL ontologies in natural language via LLM-generated SPARQL."};
    app.require_subcommand(1);

    std::string file;
    bool strip = false;
    std::string out_dir;
    auto* partition = app.add_subcommand("partition", "Split an ontology into TBox and ABox files");
    partition->add_option("file", file, "Turtle file")->required();
    partition->add_flag("--strip-comments", strip, "Remove rdfs:comment triples from the TBox output");
    partition->add_option("--out-dir", out_dir, "Directory for the output files (default: next to the input)");

    std::string query_path;
    auto* query = app.add_subcommand("query", "Run a SPARQL query against a Turtle file");
    query->add_option("file", file, "Turtle file")->required();
    query->add_option("query", query_path, "Query file, or - for standard input")->required();

    std::string question;
    bool no_comments = false;
    std::string provider;
    bool as_json = false;
    int max_attempts = 3;
    auto* ask = app.add_subcommand("ask", "Answer one question with the full pipeline");
    ask->add_option("ontology", file, "Turtle file")->required();
    ask->add_option("question", question, "Question text")->required();
    ask->add_flag("--no-comments", no_comments, "Strip rdfs:comment from the prompt");
    ask->add_option("--provider", provider, "Provider config (default: ./provider.json)");
    ask->add_flag("--json", as_json, "Print the answer record as JSON");
    ask->add_option("--max-attempts", max_attempts, "Translation attempts")->check(CLI::Range(1, 10));

    std::string config;
    auto* serve = app.add_subcommand("serve", "Start the chat HTTP API");
    serve->add_option("--config", config, "Service config file")->required();

    std::string corpus;
    std::string fixture_dir;
    int jobs = 1;
    std::string record;
    auto* evalc = app.add_subcommand("eval", "Run the question corpus experiment");
    evalc->add_option("--corpus", corpus, "Question corpus JSON")->required();
    evalc->add_option("--fixtures", fixture_dir, "Fixture directory with the ODP Turtle files")->required();
    evalc->add_option("--provider", provider, "Provider config (default: ./provider.json)");
    evalc->add_option("--out", out_dir, "Output directory for report.{md,csv,json}")->required();
    evalc->add_option("--jobs", jobs, "Parallel runs")->check(CLI::Range(1, 256));
    evalc->add_option("--max-attempts", max_attempts, "Translation attempts")->check(CLI::Range(1, 10));
    evalc->add_option("--record", record, "Write a replay cassette of all provider calls");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*partition) return cmd_partition(file, strip, out_dir);
        if (*query) return cmd_query(file, query_path);
        if (*ask) return cmd_ask(file, question, no_comments, provider, as_json, max_attempts);
        if (*serve) return cmd_serve(config);
        if (*evalc) return cmd_eval(corpus, fixture_dir, provider, out_dir, jobs, max_attempts, record);
    } catch (const ExitCode& e) {
        return e.code;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoInput;
    } catch (const rdf::TurtleSyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const rdf::UnsupportedFeature& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const sparql::QuerySyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const sparql::UnsupportedSparqlFeature& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const llm::EmptyQuestion& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const llm::ProviderConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const chat::ServiceConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
