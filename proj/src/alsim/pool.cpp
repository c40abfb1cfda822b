// SPDX-License-Identifier: Apache-2.0
#include <listal/alsim/pool.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace listal::alsim {

PoolState::PoolState(std::vector<double> oracle_labels, std::span<const std::size_t> initial)
    : oracle_(std::move(oracle_labels)), labeled_mask_(oracle_.size(), 0) {
  for (std::size_t i : initial) {
    if (i >= oracle_.size())
      throw std::out_of_range("initial index " + std::to_string(i) + " outside pool of " +
                              std::to_string(oracle_.size()));
    if (labeled_mask_[i]) throw std::invalid_argument("duplicate initial index " + std::to_string(i));
    labeled_mask_[i] = 1;
  }
  for (std::size_t i = 0; i < oracle_.size(); ++i)
    (labeled_mask_[i] ? labeled_ : unlabeled_).push_back(i);
}

bool PoolState::is_labeled(std::size_t index) const {
  return index < labeled_mask_.size() && labeled_mask_[index] != 0;
}

double PoolState::label(std::size_t index) const {
  if (!is_labeled(index))
    throw std::logic_error("oracle label of unlabeled index " + std::to_string(index) + " requested");
  return oracle_[index];
}

std::vector<double> PoolState::labels(std::span<const std::size_t> indices) const {
  std::vector<double> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(label(i));
  return out;
}

void PoolState::reveal(std::span<const std::size_t> chosen) {
  if (chosen.size() > unlabeled_.size())
    throw std::invalid_argument("budget " + std::to_string(chosen.size()) + " exceeds the " +
                                std::to_string(unlabeled_.size()) + " unlabeled samples left");
  std::vector<std::size_t> picks(chosen.begin(), chosen.end());
  std::sort(picks.begin(), picks.end());
  if (std::adjacent_find(picks.begin(), picks.end()) != picks.end())
    throw std::invalid_argument("selection contains a duplicate index");
  for (std::size_t i : picks) {
    if (i >= oracle_.size()) throw std::out_of_range("selected index " + std::to_string(i) + " outside pool");
    if (labeled_mask_[i]) throw std::invalid_argument("selected index " + std::to_string(i) + " is already labeled");
  }
  for (std::size_t i : picks) labeled_mask_[i] = 1;
  std::vector<std::size_t> merged;
  merged.reserve(labeled_.size() + picks.size());
  std::merge(labeled_.begin(), labeled_.end(), picks.begin(), picks.end(), std::back_inserter(merged));
  labeled_ = std::move(merged);
  std::erase_if(unlabeled_, [&](std::size_t i) { return labeled_mask_[i] != 0; });
  ++cycle_;
}

void PoolState::check_partition() const {
  if (labeled_.size() + unlabeled_.size() != oracle_.size())
    throw std::logic_error("labeled and unlabeled sets do not cover the pool");
  std::vector<std::uint8_t> seen(oracle_.size(), 0);
  for (std::size_t i : labeled_) {
    if (i >= oracle_.size() || seen[i] || !labeled_mask_[i]) throw std::logic_error("labeled set corrupt");
    seen[i] = 1;
  }
  for (std::size_t i : unlabeled_) {
    if (i >= oracle_.size() || seen[i] || labeled_mask_[i]) throw std::logic_error("unlabeled set corrupt");
    seen[i] = 1;
  }
}

}  // namespace listal::alsim
