// SPDX-License-Identifier: Apache-2.0
/**
 * @file   report.hpp
 * @brief  Flattens run results into metric rows.
 */
#pragma once

#include <span>
#include <vector>

#include <listal/alsim/experiment.hpp>
#include <listal/bench/metrics.hpp>

namespace listal::alsim {

/// One row per cycle for the test metric, plus `spearman` (and
/// `spearman_degenerate` = 1 when flagged) for loss-predictor strategies.
/// Wall time is left out so the rows are reproducible.
std::vector<bench::ReportRow> to_report_rows(std::span<const RunResult> results);

}  // namespace listal::alsim
