// SPDX-License-Identifier: Apache-2.0
/**
 * @file   config.hpp
 * @brief  Experiment settings from `key = value` files and overrides.
 *
 * Lines are `key = value`; `#` starts a comment; blank lines are ignored.
 * Keys:
 *   dataset (blobs|hard-regression|csv|grid-image), train_size, test_size,
 *   input_dim, num_classes, clusters_per_class, cluster_std, center_range,
 *   noise, marked_fraction, marked_noise_scale, grid, csv_path, label_column,
 *   data_seed, strategy (comma list), initial_size, budget, cycles,
 *   subset_size, batch_size, epochs, lr_drop_fraction, target_optimizer
 *   (sgd|adam), target_lr, target_momentum, target_weight_decay,
 *   lpm_optimizer, lpm_lr, lpm_weight_decay, target_hidden (comma list),
 *   lpm_hidden, pairwise_margin, retrain (fresh|warm), sorter, seeds (comma
 *   list), threads, out
 *
 * Unset target_* keys keep the task default: sgd for classification, adam
 * for regression.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <listal/alsim/experiment.hpp>

namespace listal::bench {

struct RunSettings {
  alsim::ExperimentConfig experiment;
  std::vector<strategies::StrategyKind> strategies = {strategies::StrategyKind::Random};
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  unsigned threads = 0;
  std::filesystem::path out = "results";
};

/// Ordered (key, value) pairs of a config file. Errors name the line.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::filesystem::path& path);

/// Applies one key. Throws std::invalid_argument naming the key for an
/// unknown key or malformed value.
void apply_setting(RunSettings& settings, const std::string& key, const std::string& value);

/// Defaults overlaid with the file at `path`.
RunSettings load_run_settings(const std::filesystem::path& path);

std::vector<std::string> split_list(const std::string& text);

}  // namespace listal::bench
