// SPDX-License-Identifier: Apache-2.0
/**
 * @file   sorter.hpp
 * @brief  Differentiable sorter: a bidirectional GRU over a length-d scalar
 *         sequence with a per-position linear head emitting a predicted
 *         normalized rank.
 *
 * Each input row is min-max normalized to [0,1] before the recurrence, so
 * the sorter sees the same value range it was trained on regardless of the
 * scale of the losses fed to it.
 */
#pragma once

#include <cstdint>
#include <vector>

#include <listal/models/layers.hpp>

namespace listal::models {

/// Maps a row of d values to d approximate normalized ranks, differentiably.
class Ranker {
 public:
  virtual ~Ranker() = default;
  virtual std::size_t length() const = 0;
  /// values: [B, d] -> [B, d]
  virtual Var rank(Tape& tape, Var values) = 0;
};

struct SorterConfig {
  std::size_t length = 32;
  std::size_t hidden = 128;
};

class Sorter : public Ranker {
 public:
  Sorter(const SorterConfig& config, std::uint64_t seed);

  std::size_t length() const override { return config_.length; }
  Var rank(Tape& tape, Var values) override { return forward(tape, values); }

  /// values: [B, d] raw scalars -> [B, d] predicted normalized ranks.
  Var forward(Tape& tape, Var values);

  /// A frozen sorter contributes no parameter gradients; used when it only
  /// serves as a differentiable rank surrogate for another model.
  void set_frozen(bool frozen) noexcept { frozen_ = frozen; }
  bool frozen() const noexcept { return frozen_; }

  const SorterConfig& config() const noexcept { return config_; }
  std::vector<Parameter*> parameters();

 private:
  SorterConfig config_;
  bool frozen_ = false;
  GruCell forward_cell_;
  GruCell backward_cell_;
  Linear head_;
};

/// Inference on a single sequence.
std::vector<double> sorter_forward(Sorter& sorter, std::span<const double> values);

}  // namespace listal::models
