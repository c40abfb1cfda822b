// SPDX-License-Identifier: Apache-2.0
/**
 * @file   strategies.hpp
 * @brief  Acquisition functions over a candidate subset of the unlabeled pool.
 *
 * Every strategy breaks ties by ascending pool index.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <listal/autodiff/tensor.hpp>
#include <listal/models/target_model.hpp>

namespace listal::strategies {

enum class StrategyKind { Random, Entropy, Coreset, Pairwise, Listwise };

std::string to_string(StrategyKind kind);
StrategyKind parse_strategy(const std::string& text);
/// Strategies that train a loss predictor.
bool uses_loss_predictor(StrategyKind kind);

struct QueryContext {
  /// Pool indices of the candidates; all currently unlabeled.
  std::vector<std::size_t> candidates;
  /// Tapped features, one row (or [C,H,W] block) per candidate.
  ad::Tensor features;
  /// Class posteriors [n, C] (classification only).
  std::optional<ad::Tensor> probabilities;
  /// Predicted losses from the loss predictor (learned-loss strategies).
  std::vector<double> predicted_losses;
  /// Tapped features of the labeled set; empty when nothing is labeled.
  std::optional<ad::Tensor> labeled_features;
  std::size_t budget = 0;
  models::TaskKind task = models::TaskKind::Classification;

  /// Throws unless budget <= candidates and per-candidate data aligns.
  void validate() const;
};

struct Selection {
  /// Chosen pool indices in pick order.
  std::vector<std::size_t> chosen;
  std::string strategy;
  /// Score of each chosen index at the time it was picked.
  std::vector<double> scores;
};

/// Uniform sample of `size` indices without replacement, returned sorted.
/// Returns every index when size >= unlabeled.size().
std::vector<std::size_t> draw_subset(std::span<const std::size_t> unlabeled, std::size_t size,
                                     std::uint64_t seed);

Selection select_random(const QueryContext& ctx, std::uint64_t seed);

/// Largest H(p) = -sum p ln p first.
Selection select_entropy(const QueryContext& ctx);

/// Greedy farthest-first traversal in feature space: each step picks the
/// candidate whose distance to the nearest labeled-or-picked point is
/// largest. With an empty labeled set the first pick is the lowest index.
Selection select_kcenter_greedy(const QueryContext& ctx);

/// Candidates with the largest predicted losses; scalar comparison only.
Selection select_top_predicted_loss(const QueryContext& ctx, const std::string& name = "listwise");

/// Shannon entropy in nats.
double entropy(std::span<const double> probabilities);

}  // namespace listal::strategies
