// SPDX-License-Identifier: Apache-2.0
/**
 * @file   pool.hpp
 * @brief  Labeled / unlabeled partition of the training pool plus the
 *         simulated oracle.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace listal::alsim {

class PoolState {
 public:
  /// Pool of `oracle_labels.size()` samples with `initial` labeled.
  PoolState(std::vector<double> oracle_labels, std::span<const std::size_t> initial);

  std::size_t pool_size() const noexcept { return oracle_.size(); }
  /// Both kept sorted ascending.
  const std::vector<std::size_t>& labeled() const noexcept { return labeled_; }
  const std::vector<std::size_t>& unlabeled() const noexcept { return unlabeled_; }
  std::size_t cycle() const noexcept { return cycle_; }

  bool is_labeled(std::size_t index) const;
  /// Oracle label; throws std::logic_error for an index not yet labeled.
  double label(std::size_t index) const;
  std::vector<double> labels(std::span<const std::size_t> indices) const;

  /// Moves `chosen` from unlabeled to labeled and advances the cycle counter.
  /// Rejects duplicates, out-of-range and already-labeled indices without
  /// modifying the state.
  void reveal(std::span<const std::size_t> chosen);

  /// Throws std::logic_error if the partition invariant is broken.
  void check_partition() const;

 private:
  std::vector<double> oracle_;
  std::vector<std::uint8_t> labeled_mask_;
  std::vector<std::size_t> labeled_;
  std::vector<std::size_t> unlabeled_;
  std::size_t cycle_ = 0;
};

}  // namespace listal::alsim
