// SPDX-License-Identifier: Apache-2.0
/**
 * @file   sorter_training.hpp
 * @brief  Synthetic corpus generation and supervised sorter training.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <listal/models/sorter.hpp>
#include <listal/ranking/ranks.hpp>

namespace listal::ranking {

struct SyntheticSequence {
  std::vector<double> values;  ///< in [0,1], min 0 and max 1
  RankVector true_ranks;
};

/// Draws each sequence from a mixture (50% uniform, 30% clipped Gaussian,
/// 20% piecewise-constant steps plus noise) and min-max normalizes it.
/// Sequence i depends only on (seed, i), so shards can be generated
/// independently.
std::vector<SyntheticSequence> generate_synthetic_sequences(std::size_t count, std::size_t length,
                                                            std::uint64_t seed);

struct SorterTrainingConfig {
  std::size_t length = 64;
  std::size_t hidden = 128;
  std::size_t epochs = 400;
  std::size_t corpus_size = 100000;
  std::size_t heldout_size = 1000;
  std::size_t batch_size = 64;
  /// Mini-batches per epoch; batches walk the (reshuffled) corpus cyclically.
  std::size_t batches_per_epoch = 8;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;
  /// Optional progress hook: (epoch, mean training loss of the epoch).
  std::function<void(std::size_t, double)> on_epoch;
};

struct SorterTrainingResult {
  models::Sorter sorter;
  double heldout_spearman = 0.0;
  double final_loss = 0.0;
  std::size_t epochs = 0;
};

class SorterDivergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimizes the MSE between sorter outputs and exact normalized ranks with
/// Adam. Throws SorterDivergence when the loss becomes non-finite.
SorterTrainingResult train_sorter(const SorterTrainingConfig& config);

/// Seed of the sorter's initial weights for a training seed.
std::uint64_t sorter_init_seed(std::uint64_t training_seed);

/// Mean Spearman between sorter outputs and the true ranks of each sequence.
double heldout_spearman(models::Sorter& sorter, std::span<const SyntheticSequence> sequences);

struct SorterMeta {
  std::size_t length = 0;
  std::size_t hidden = 0;
  std::uint64_t seed = 0;
  std::size_t epochs = 0;
  double heldout_spearman = 0.0;
};

/// Writes the parameter dump at `path` and a `<path>.meta` key=value sidecar.
void save_sorter(const std::filesystem::path& path, models::Sorter& sorter, const SorterMeta& meta);

struct LoadedSorter {
  models::Sorter sorter;
  SorterMeta meta;
};

LoadedSorter load_sorter(const std::filesystem::path& path);

std::filesystem::path sorter_meta_path(const std::filesystem::path& path);

}  // namespace listal::ranking
