// SPDX-License-Identifier: Apache-2.0
#include <listal/bench/metrics.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace listal::bench {

namespace {
constexpr const char* kHeader = "strategy,seed,cycle,labeled,metric,value";

template <typename T>
T parse_number(const std::string& cell, std::size_t line, const char* column) {
  T v{};
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size())
    throw std::runtime_error("metrics line " + std::to_string(line) + ": bad " + column + " '" + cell + "'");
  return v;
}
}  // namespace

bool report_order(const ReportRow& a, const ReportRow& b) {
  return std::tie(a.strategy, a.seed, a.cycle, a.metric) < std::tie(b.strategy, b.seed, b.cycle, b.metric);
}

std::string format_metric_value(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_metrics_csv(std::span<const ReportRow> rows, const std::filesystem::path& path) {
  if (rows.empty()) throw std::invalid_argument("no metric rows to write");
  std::vector<ReportRow> sorted(rows.begin(), rows.end());
  std::stable_sort(sorted.begin(), sorted.end(), report_order);
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (!report_order(sorted[i - 1], sorted[i]))
      throw std::invalid_argument("duplicate metric row for " + sorted[i].strategy + " seed " +
                                  std::to_string(sorted[i].seed) + " cycle " +
                                  std::to_string(sorted[i].cycle) + " " + sorted[i].metric);
  for (const auto& r : sorted)
    if (r.strategy.find_first_of(",\n") != std::string::npos || r.metric.find_first_of(",\n") != std::string::npos)
      throw std::invalid_argument("strategy and metric names must not contain commas or newlines");

  std::ostringstream text;
  text << kHeader << '\n';
  for (const auto& r : sorted)
    text << r.strategy << ',' << r.seed << ',' << r.cycle << ',' << r.labeled << ',' << r.metric << ','
         << format_metric_value(r.value) << '\n';
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write metrics file '" + path.string() + "'");
  out << text.str();
  out.flush();
  if (!out) throw std::runtime_error("failed writing metrics file '" + path.string() + "'");
}

std::vector<ReportRow> read_metrics_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open metrics file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::runtime_error("metrics file '" + path.string() + "' lacks the header '" + kHeader + "'");
  std::vector<ReportRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (cells.size() != 6)
      throw std::runtime_error("metrics line " + std::to_string(line_no) + ": expected 6 fields, got " +
                               std::to_string(cells.size()));
    ReportRow r;
    r.strategy = cells[0];
    r.seed = parse_number<std::uint64_t>(cells[1], line_no, "seed");
    r.cycle = parse_number<std::size_t>(cells[2], line_no, "cycle");
    r.labeled = parse_number<std::size_t>(cells[3], line_no, "labeled");
    r.metric = cells[4];
    r.value = parse_number<double>(cells[5], line_no, "value");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SummaryRow> summarize(std::span<const ReportRow> rows) {
  std::map<std::tuple<std::string, std::string, std::size_t>, std::vector<const ReportRow*>> groups;
  for (const auto& r : rows) groups[{r.strategy, r.metric, r.cycle}].push_back(&r);
  std::vector<SummaryRow> out;
  out.reserve(groups.size());
  for (const auto& [key, members] : groups) {
    SummaryRow s;
    std::tie(s.strategy, s.metric, s.cycle) = key;
    s.seeds = members.size();
    s.min = members.front()->value;
    s.max = members.front()->value;
    double sum = 0.0, labeled = 0.0;
    for (const auto* r : members) {
      sum += r->value;
      labeled += static_cast<double>(r->labeled);
      s.min = std::min(s.min, r->value);
      s.max = std::max(s.max, r->value);
    }
    const double n = static_cast<double>(members.size());
    s.mean = sum / n;
    s.labeled = labeled / n;
    if (members.size() > 1) {
      double ss = 0.0;
      for (const auto* r : members) ss += (r->value - s.mean) * (r->value - s.mean);
      s.stddev = std::sqrt(ss / (n - 1.0));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace listal::bench
