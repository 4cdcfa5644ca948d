#pragma once
#include "ontochat/eval/experiment.hpp"

#include <string>

namespace ontochat::eval {

enum class ReportFormat { Markdown, Csv, Json };

// Markdown: the 3 x 4 cluster table followed by a per-run appendix.
// CSV: header plus one row per cell. JSON: the full RunReport.
std::string render_report(const RunReport& report, ReportFormat format);

} // namespace ontochat::eval
