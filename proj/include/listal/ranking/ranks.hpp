// SPDX-License-Identifier: Apache-2.0
/**
 * @file   ranks.hpp
 * @brief  Exact ranking and Spearman's rank correlation.
 *
 * Ranks are ascending (smallest value gets rank 0), 0-based, with ties
 * broken by original index. Normalized ranks divide by d-1.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace listal::ranking {

enum class RankProvenance { Exact, SorterApproximate };

struct RankVector {
  std::vector<double> ranks;
  RankProvenance provenance = RankProvenance::Exact;

  std::size_t size() const noexcept { return ranks.size(); }
};

/// Paired ground-truth and predicted losses of one mini-batch.
struct LossList {
  std::vector<double> ground_truth;
  std::vector<double> predicted;

  std::size_t size() const noexcept { return ground_truth.size(); }
  /// Throws unless lengths match, values are finite and ground truth >= 0.
  void validate() const;
};

/// 0-based integer rank of each position (stable tie-break by index).
std::vector<std::size_t> integer_ranks(std::span<const double> values);

/// Normalized exact ranks rank/(d-1). Requires d >= 2.
RankVector true_ranks(std::span<const double> values);

/// r_s = 1 - 6 * sum (rank_a - rank_b)^2 / (d (d^2 - 1)) on integer ranks.
double spearman(std::span<const double> a, std::span<const double> b);

/// Checks that r_s evaluated from integer ranks equals the value recovered
/// from the mean squared error of normalized ranks,
///   r_s = 1 - 6 (d-1) / (d+1) * MSE(rk(l), rk(l_hat)),
/// to within 1e-12.
bool spearman_objective_equivalence_check(const LossList& losses);

}  // namespace listal::ranking
