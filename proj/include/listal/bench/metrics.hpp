// SPDX-License-Identifier: Apache-2.0
/**
 * @file   metrics.hpp
 * @brief  Metrics CSV (`strategy,seed,cycle,labeled,metric,value`) and
 *         per-(strategy, cycle, metric) seed summaries.
 */
#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace listal::bench {

struct ReportRow {
  std::string strategy;
  std::uint64_t seed = 0;
  std::size_t cycle = 0;
  std::size_t labeled = 0;
  std::string metric;
  double value = 0.0;

  bool operator==(const ReportRow&) const = default;
};

/// Ordering used by the writer: strategy, seed, cycle, metric.
bool report_order(const ReportRow& a, const ReportRow& b);

/// Six significant digits, printf %.6g.
std::string format_metric_value(double value);

/// Sorted rows with a header. Throws std::invalid_argument for no rows or
/// a duplicate (strategy, seed, cycle, metric), std::runtime_error when the
/// path cannot be written.
void write_metrics_csv(std::span<const ReportRow> rows, const std::filesystem::path& path);

/// Inverse of write_metrics_csv; errors name the offending line.
std::vector<ReportRow> read_metrics_csv(const std::filesystem::path& path);

struct SummaryRow {
  std::string strategy;
  std::string metric;
  std::size_t cycle = 0;
  double labeled = 0.0;  ///< mean labeled count over seeds
  std::size_t seeds = 0;
  double mean = 0.0;
  double stddev = 0.0;  ///< sample standard deviation, 0 for one seed
  double min = 0.0;
  double max = 0.0;
};

/// Seed aggregates, ordered by strategy, metric, cycle.
std::vector<SummaryRow> summarize(std::span<const ReportRow> rows);

}  // namespace listal::bench
