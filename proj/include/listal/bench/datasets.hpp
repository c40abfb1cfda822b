// SPDX-License-Identifier: Apache-2.0
/**
 * @file   datasets.hpp
 * @brief  Desk-scale synthetic datasets and a CSV loader.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <listal/autodiff/tensor.hpp>
#include <listal/models/target_model.hpp>

namespace listal::bench {

struct Dataset {
  ad::Tensor features;  ///< [N, D]
  std::vector<double> labels;
  /// Samples drawn from the designated hard subpopulation (1) or not (0).
  std::vector<std::uint8_t> marked;
  models::TaskKind task = models::TaskKind::Classification;
  std::size_t num_classes = 0;
  /// Side of the square grid for image datasets, 0 for flat features.
  std::size_t grid = 0;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t dim() const { return features.dim(1); }
  ad::Tensor rows(std::span<const std::size_t> indices) const;
  std::vector<double> labels_at(std::span<const std::size_t> indices) const;
};

struct DatasetSplit {
  Dataset train;
  Dataset test;
};

enum class DatasetKind { Blobs, HardRegression, CsvTabular, GridImage };

std::string to_string(DatasetKind kind);
DatasetKind parse_dataset_kind(const std::string& text);

struct DatasetSpec {
  DatasetKind kind = DatasetKind::Blobs;
  std::size_t train_size = 5000;
  std::size_t test_size = 1000;
  std::size_t input_dim = 8;
  std::size_t num_classes = 4;
  /// Blobs: Gaussian clusters per class, their spread and the half-width of
  /// the cube the centers are drawn from.
  std::size_t clusters_per_class = 3;
  double cluster_std = 1.0;
  double center_range = 3.0;
  /// Hard regression: base noise sd, fraction of the input space that is
  /// marked, and the noise multiplier inside it.
  double noise = 0.1;
  double marked_fraction = 0.2;
  double marked_noise_scale = 5.0;
  /// Grid images: side length.
  std::size_t grid = 8;
  /// CSV input.
  std::string csv_path;
  std::string label_column = "label";
  std::uint64_t seed = 0;
};

/// Gaussian clusters with uniform class priors.
DatasetSplit generate_blobs(const DatasetSpec& spec);

/// y = smooth f(x) + noise, noise scale multiplied inside the marked region
/// x0 > 1 - 2 * marked_fraction (inputs uniform on [-1,1]^D).
DatasetSplit generate_hard_regression(const DatasetSpec& spec);

/// 8x8-style single-channel images of stripe / checker / blob / ring classes.
DatasetSplit generate_grid_images(const DatasetSpec& spec);

/// Header row required; every other cell numeric. The last 20% of rows
/// (rounded down) form the test split. Regression when `task` says so,
/// otherwise labels must be non-negative integers.
DatasetSplit load_csv_dataset(const std::filesystem::path& path, const std::string& label_column,
                              models::TaskKind task = models::TaskKind::Classification);

/// Writes `data` (features then label) with a header row.
void write_csv_dataset(const std::filesystem::path& path, const Dataset& data,
                       const std::string& label_column = "label");

DatasetSplit make_dataset(const DatasetSpec& spec);

/// Target-model configuration matching a dataset's shape.
models::TargetConfig default_target_config(const Dataset& data);

}  // namespace listal::bench
