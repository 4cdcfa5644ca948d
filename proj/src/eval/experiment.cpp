#include "ontochat/eval/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <tuple>
#include <thread>

namespace ontochat::eval {

using nlohmann::json;

Cluster cluster_of(Category category) {
    switch (category) {
    case Category::Boolean:
    case Category::Count:
    case Category::Rank: return Cluster::BooleanCountRank;
    case Category::Simple:
    case Category::String:
    case Category::TwoHop: return Cluster::SimpleStringTwoHop;
    case Category::TwoIntent: return Cluster::TwoIntent;
    }
    return Cluster::TwoIntent;
}

std::string to_string(Cluster cluster) {
    switch (cluster) {
    case Cluster::BooleanCountRank: return "Boolean, Count, Rank";
    case Cluster::SimpleStringTwoHop: return "Simple, String, Two Hop";
    case Cluster::TwoIntent: return "Two Intent";
    }
    return "?";
}

std::string condition_label(bool comments) { return comments ? "commented" : "no-comments"; }

int percent_round_half_up(int correct, int total) {
    if (total <= 0) return 0;
    return (200 * correct + total) / (2 * total);
}

std::map<CellKey, Cell> aggregate(const std::vector<RunOutcome>& runs) {
    std::map<CellKey, Cell> cells;
    for (Cluster c : kClusters) {
        for (bool comments : {false, true}) {
            for (Phrasing p : kPhrasings) cells[{c, comments, p}] = {};
        }
    }
    for (const auto& r : runs) {
        Cell& cell = cells[{cluster_of(r.category), r.comments, r.phrasing}];
        ++cell.total;
        if (r.correct) ++cell.correct;
    }
    for (auto& [key, cell] : cells) cell.percent = percent_round_half_up(cell.correct, cell.total);
    return cells;
}

namespace {

struct Prepared {
    std::string tbox_text[2];  // indexed by comments
    std::vector<std::string> markers;
};

RunOutcome run_one(const QuestionRecord& rec, bool comments, const Prepared& prep, const rdf::Graph& abox,
                   llm::Provider& provider, const ExperimentOptions& options) {
    RunOutcome out;
    out.question_id = rec.id;
    out.odp = rec.odp;
    out.category = rec.category;
    out.phrasing = rec.phrasing;
    out.comments = comments;

    llm::TranslateOptions topts;
    topts.max_attempts = options.max_attempts;
    topts.question_id = rec.id;
    topts.condition = condition_label(comments);
    topts.privacy_markers = prep.markers;
    out.translation = llm::translate(rec.text, prep.tbox_text[comments ? 1 : 0], provider, topts);

    if (!out.translation.succeeded) {
        out.failure_kind = FailureKind::TranslationFailed;
        out.detail = out.translation.failure ? llm::to_string(out.translation.failure->kind) + ": " +
                                                   out.translation.failure->detail
                                             : "translation failed";
        return out;
    }
    Score s = score_run(out.translation.final_queries, rec, abox);
    out.correct = s.correct;
    out.failure_kind = s.failure;
    out.detail = s.detail;
    return out;
}

} // namespace

RunReport run_experiment(const ExperimentMatrix& matrix, const fixtures::FixtureSet& fixtures, llm::Provider& provider,
                         const ExperimentOptions& options) {
    std::map<Odp, Prepared> prepared;
    for (const auto& f : fixtures.ontologies) {
        Prepared p;
        for (bool comments : {false, true}) {
            auto tbox = ontology::apply_comment_policy(
                f.parts.tbox, comments ? ontology::CommentPolicy::Retain : ontology::CommentPolicy::Strip);
            p.tbox_text[comments ? 1 : 0] = ontology::render_prompt_tbox(tbox);
        }
        p.markers = ontology::privacy_markers(f.parts);
        prepared.emplace(f.odp, std::move(p));
    }

    struct Job {
        const QuestionRecord* rec;
        bool comments;
    };
    std::vector<const QuestionRecord*> ordered;
    for (const auto& rec : matrix.corpus) ordered.push_back(&rec);
    std::stable_sort(ordered.begin(), ordered.end(), [](const QuestionRecord* a, const QuestionRecord* b) {
        return std::make_tuple(static_cast<int>(a->odp), static_cast<int>(a->category), static_cast<int>(a->phrasing)) <
               std::make_tuple(static_cast<int>(b->odp), static_cast<int>(b->category), static_cast<int>(b->phrasing));
    });
    std::vector<bool> conditions;
    for (const auto& c : matrix.conditions) conditions.push_back(c.comments);
    std::stable_sort(conditions.begin(), conditions.end());
    std::vector<Job> jobs;
    for (const auto* rec : ordered) {
        for (bool comments : conditions) jobs.push_back({rec, comments});
    }

    RunReport report;
    report.template_version = std::string(llm::kPromptTemplateVersion);
    report.runs.resize(jobs.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                const auto& f = fixtures.get(jobs[i].rec->odp);
                report.runs[i] = run_one(*jobs[i].rec, jobs[i].comments, prepared.at(jobs[i].rec->odp), f.parts.abox,
                                         provider, options);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                next = jobs.size();
            }
        }
    };
    int n = std::max(1, std::min<int>(options.jobs, static_cast<int>(jobs.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < n; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    if (error) std::rethrow_exception(error);

    report.aggregate = aggregate(report.runs);
    return report;
}

json to_json(const RunReport& report) {
    json runs = json::array();
    for (const auto& r : report.runs) {
        runs.push_back({
            {"question_id", r.question_id},
            {"odp", to_string(r.odp)},
            {"category", to_string(r.category)},
            {"phrasing", to_string(r.phrasing)},
            {"condition", condition_label(r.comments)},
            {"comments", r.comments},
            {"correct", r.correct},
            {"failure_kind", r.failure_kind ? json(to_string(*r.failure_kind)) : json(nullptr)},
            {"detail", r.detail},
            {"translation", llm::to_json(r.translation)},
        });
    }
    json cells = json::array();
    for (const auto& [key, cell] : report.aggregate) {
        cells.push_back({
            {"cluster", to_string(key.cluster)},
            {"comments", key.comments},
            {"phrasing", to_string(key.phrasing)},
            {"correct", cell.correct},
            {"total", cell.total},
            {"percent", cell.percent},
        });
    }
    return {
        {"template_version", report.template_version},
        {"run_count", report.runs.size()},
        {"aggregate", std::move(cells)},
        {"runs", std::move(runs)},
    };
}

} // namespace ontochat::eval
