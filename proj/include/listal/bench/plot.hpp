// SPDX-License-Identifier: Apache-2.0
/**
 * @file   plot.hpp
 * @brief  Learning curves as standalone SVG: seed-mean metric against
 *         labeled count per strategy, with a min/max band.
 */
#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <listal/bench/metrics.hpp>

namespace listal::bench {

/// Primary metric of a metrics table: accuracy or mae when present,
/// otherwise the alphabetically first metric.
std::string primary_metric(std::span<const ReportRow> rows);

/// SVG document for `metric`. Throws std::invalid_argument when no row
/// carries that metric.
std::string curves_svg(std::span<const ReportRow> rows, const std::string& metric);

/// Reads `metrics_path` and writes the SVG for `metric` (primary when empty).
void render_curves(const std::filesystem::path& metrics_path, const std::filesystem::path& output_path,
                   const std::string& metric = "");

}  // namespace listal::bench
