// Builds a replay cassette from a response plan by running the real
// experiment against a scripted provider and recording every call.
#include "ontochat/eval/corpus.hpp"
#include "ontochat/eval/experiment.hpp"
#include "ontochat/fixtures/fixture_set.hpp"
#include "ontochat/llm/provider.hpp"
#include "ontochat/util/io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <map>

using nlohmann::json;
using namespace ontochat;

namespace {

// Gold queries wrapped the way a chat model typically answers.
std::string default_response(const eval::QuestionRecord& rec) {
    std::string out = "Here is the SPARQL query for your question:\n\n";
    for (const auto& q : rec.gold_queries) out += "```sparql\n" + q + "\n```\n\n";
    out += "It uses only the classes and properties of the ontology.";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Author a replay cassette from a response plan"};
    std::string plan_path, corpus_path, fixture_dir, out_path;
    app.add_option("--plan", plan_path, "Response plan JSON")->required();
    app.add_option("--corpus", corpus_path, "Question corpus JSON")->required();
    app.add_option("--fixtures", fixture_dir, "Fixture directory")->required();
    app.add_option("--out", out_path, "Cassette to write")->required();
    CLI11_PARSE(app, argc, argv);

    try {
        auto fixture_set = fixtures::load_fixture_set(fixture_dir);
        auto matrix = eval::load_corpus(corpus_path, fixtures::vocabulary(fixture_set));
        json plan = json::parse(read_file(plan_path));

        std::map<std::string, const eval::QuestionRecord*> by_id;
        for (const auto& rec : matrix.corpus) by_id[rec.id] = &rec;

        std::map<std::pair<std::string, std::string>, std::vector<std::string>> scripted;
        for (const auto& run : plan.at("runs")) {
            std::string id = run.at("question_id").get<std::string>();
            if (!by_id.count(id)) throw std::runtime_error("plan names unknown question " + id);
            for (const auto& condition : run.at("conditions")) {
                auto key = std::make_pair(id, condition.get<std::string>());
                if (scripted.count(key)) throw std::runtime_error("plan scripts " + id + " twice");
                scripted[key] = run.at("responses").get<std::vector<std::string>>();
            }
        }

        auto script = std::make_shared<llm::ScriptedProvider>([&](const llm::ProviderRequest& req) {
            auto it = scripted.find({req.question_id, req.condition});
            if (it == scripted.end()) return default_response(*by_id.at(req.question_id));
            std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(req.attempt - 1), it->second.size() - 1);
            return it->second[i];
        });
        llm::RecordingProvider recorder(script);
        auto report = eval::run_experiment(matrix, fixture_set, recorder);

        write_file(out_path, llm::cassette_to_json(recorder.entries()).dump(2) + "\n");
        int correct = 0;
        for (const auto& r : report.runs) correct += r.correct ? 1 : 0;
        std::cerr << "recorded " << recorder.entries().size() << " responses for " << report.runs.size() << " runs ("
                  << correct << " correct)\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
