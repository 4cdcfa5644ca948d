#include "ontochat/eval/report.hpp"

#include <sstream>

namespace ontochat::eval {

namespace {

// Keeps a table cell on one line and free of column separators.
std::string cell_text(std::string s) {
    std::string out;
    for (char c : s) {
        if (c == '\n' || c == '\r') {
            out += ' ';
        } else if (c == '|') {
            out += "\\|";
        } else {
            out += c;
        }
    }
    return out;
}

std::string markdown(const RunReport& report) {
    std::ostringstream out;
    out << "# Experiment report\n\n";
    out << "Prompt template: `" << report.template_version << "`. Runs: " << report.runs.size() << ".\n\n";
    out << "Percentage of correctly generated SPARQL queries:\n\n";
    out << "| Categories | w/o comments SCQs | w/o comments NSCQs | commented SCQs | commented NSCQs |\n";
    out << "|---|---|---|---|---|\n";
    for (Cluster c : kClusters) {
        out << "| " << to_string(c);
        for (bool comments : {false, true}) {
            for (Phrasing p : kPhrasings) {
                auto it = report.aggregate.find({c, comments, p});
                int percent = it == report.aggregate.end() ? 0 : it->second.percent;
                out << " | " << percent << "%";
            }
        }
        out << " |\n";
    }
    out << "\n## Cell counts\n\n";
    out << "| Categories | w/o comments SCQs | w/o comments NSCQs | commented SCQs | commented NSCQs |\n";
    out << "|---|---|---|---|---|\n";
    for (Cluster c : kClusters) {
        out << "| " << to_string(c);
        for (bool comments : {false, true}) {
            for (Phrasing p : kPhrasings) {
                auto it = report.aggregate.find({c, comments, p});
                Cell cell = it == report.aggregate.end() ? Cell{} : it->second;
                out << " | " << cell.correct << "/" << cell.total;
            }
        }
        out << " |\n";
    }
    out << "\n## Runs\n\n";
    out << "| Question | ODP | Category | Phrasing | Condition | Attempts | Correct | Failure | Generated query |\n";
    out << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : report.runs) {
        std::string query;
        for (const auto& q : r.translation.final_queries) {
            if (!query.empty()) query += " ;; ";
            query += q;
        }
        out << "| " << r.question_id << " | " << to_string(r.odp) << " | " << to_string(r.category) << " | "
            << to_string(r.phrasing) << " | " << condition_label(r.comments) << " | " << r.translation.attempts.size()
            << " | " << (r.correct ? "yes" : "no") << " | "
            << (r.failure_kind ? to_string(*r.failure_kind) : std::string("")) << " | "
            << (query.empty() ? std::string("") : "`" + cell_text(query) + "`") << " |\n";
    }
    return out.str();
}

std::string csv(const RunReport& report) {
    std::ostringstream out;
    out << "cluster,comments,phrasing,correct,total,percent\n";
    for (Cluster c : kClusters) {
        for (bool comments : {false, true}) {
            for (Phrasing p : kPhrasings) {
                auto it = report.aggregate.find({c, comments, p});
                Cell cell = it == report.aggregate.end() ? Cell{} : it->second;
                out << '"' << to_string(c) << "\"," << (comments ? "true" : "false") << "," << to_string(p) << ","
                    << cell.correct << "," << cell.total << "," << cell.percent << "\n";
            }
        }
    }
    return out.str();
}

} // namespace

std::string render_report(const RunReport& report, ReportFormat format) {
    switch (format) {
    case ReportFormat::Markdown: return markdown(report);
    case ReportFormat::Csv: return csv(report);
    case ReportFormat::Json: return to_json(report).dump(2) + "\n";
    }
    return {};
}

} // namespace ontochat::eval
