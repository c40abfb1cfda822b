// SPDX-License-Identifier: Apache-2.0
#include <listal/ranking/ranks.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace listal::ranking {

void LossList::validate() const {
  if (ground_truth.size() != predicted.size())
    throw std::invalid_argument("loss list lengths differ: " + std::to_string(ground_truth.size()) +
                                " vs " + std::to_string(predicted.size()));
  for (std::size_t i = 0; i < ground_truth.size(); ++i) {
    if (!std::isfinite(ground_truth[i]) || !std::isfinite(predicted[i]))
      throw std::invalid_argument("non-finite loss at position " + std::to_string(i));
    if (ground_truth[i] < 0.0)
      throw std::invalid_argument("negative ground-truth loss at position " + std::to_string(i));
  }
}

std::vector<std::size_t> integer_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<std::size_t> rank(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

RankVector true_ranks(std::span<const double> values) {
  if (values.size() < 2)
    throw std::invalid_argument("ranking needs at least 2 values, got " +
                                std::to_string(values.size()));
  const auto rank = integer_ranks(values);
  const double denom = static_cast<double>(values.size() - 1);
  RankVector out;
  out.ranks.resize(values.size());
  for (std::size_t i = 0; i < rank.size(); ++i) out.ranks[i] = static_cast<double>(rank[i]) / denom;
  return out;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("spearman: length mismatch " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  if (a.size() < 2) throw std::invalid_argument("spearman: need at least 2 values");
  const auto ra = integer_ranks(a);
  const auto rb = integer_ranks(b);
  // integer arithmetic keeps the sum exact for any practical d
  unsigned long long squared = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const long long diff = static_cast<long long>(ra[i]) - static_cast<long long>(rb[i]);
    squared += static_cast<unsigned long long>(diff * diff);
  }
  const double d = static_cast<double>(a.size());
  return 1.0 - 6.0 * static_cast<double>(squared) / (d * (d * d - 1.0));
}

bool spearman_objective_equivalence_check(const LossList& losses) {
  losses.validate();
  const double direct = spearman(losses.ground_truth, losses.predicted);
  const auto ra = true_ranks(losses.ground_truth);
  const auto rb = true_ranks(losses.predicted);
  double mse = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double diff = ra.ranks[i] - rb.ranks[i];
    mse += diff * diff;
  }
  const double d = static_cast<double>(ra.size());
  mse /= d;
  const double via_mse = 1.0 - 6.0 * (d - 1.0) / (d + 1.0) * mse;
  return std::abs(direct - via_mse) <= 1e-12;
}

}  // namespace listal::ranking
