// SPDX-License-Identifier: Apache-2.0
/**
 * @file   losses.hpp
 * @brief  Ranking losses for training a loss predictor.
 */
#pragma once

#include <span>

#include <listal/models/sorter.hpp>

namespace listal::ranking {

using ad::Tape;
using ad::Var;

/// Ranker returning the exact normalized ranks of its input as a constant.
/// Stands in for a perfect sorter in oracle tests; passes no gradient.
class ExactRanker : public models::Ranker {
 public:
  explicit ExactRanker(std::size_t length) : length_(length) {}
  std::size_t length() const override { return length_; }
  Var rank(Tape& tape, Var values) override;

 private:
  std::size_t length_;
};

/// Listwise loss: mean_i (rk(l_i) - sorter(l_hat)_i)^2.
/// `predicted` holds d values as [d,1] or [1,d]; the ranker's parameters
/// receive gradients on backward but callers do not step them.
Var listwise_ranking_loss(Tape& tape, Var predicted, std::span<const double> ground_truth,
                          models::Ranker& ranker);

/// Pairwise hinge over consecutive pairs (0,1), (2,3), ...:
///   mean_p max(0, -sign(l_i - l_j) * (l_hat_i - l_hat_j) + margin)
/// with sign(0) = 0. Requires even d and margin > 0.
Var pairwise_ranking_loss(Tape& tape, Var predicted, std::span<const double> ground_truth,
                          double margin = 1.0);

}  // namespace listal::ranking
