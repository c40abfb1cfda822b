// SPDX-License-Identifier: Apache-2.0
#include <listal/alsim/report.hpp>

namespace listal::alsim {

std::vector<bench::ReportRow> to_report_rows(std::span<const RunResult> results) {
  std::vector<bench::ReportRow> rows;
  for (const auto& run : results) {
    const std::string name = strategies::to_string(run.strategy);
    for (const auto& rec : run.records) {
      const auto& ev = rec.evaluation;
      rows.push_back({name, run.seed, rec.cycle, rec.labeled, ev.metric_name, ev.metric});
      if (ev.spearman) rows.push_back({name, run.seed, rec.cycle, rec.labeled, "spearman", *ev.spearman});
      if (ev.spearman_degenerate)
        rows.push_back({name, run.seed, rec.cycle, rec.labeled, "spearman_degenerate", 1.0});
    }
  }
  return rows;
}

}  // namespace listal::alsim
