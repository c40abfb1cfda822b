// SPDX-License-Identifier: Apache-2.0
/**
 * @file   target_model.hpp
 * @brief  Target models with a feature tap at the last block before the
 *         output layer.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <listal/models/layers.hpp>

namespace listal::models {

enum class TaskKind { Classification, Regression };

enum class TargetKind { MlpClassifier, MlpRegressor, TinyCnnClassifier };

std::string to_string(TargetKind kind);
TargetKind parse_target_kind(const std::string& text);

struct TargetConfig {
  TargetKind kind = TargetKind::MlpClassifier;
  /// Flat feature count of one sample (grid * grid * in_channels for the CNN).
  std::size_t input_dim = 2;
  /// MLP hidden widths; the tap is the output of the last one.
  std::vector<std::size_t> hidden = {64, 64};
  std::size_t num_classes = 2;
  /// Tiny CNN: square grid side, input channels, conv channel counts.
  std::size_t grid = 8;
  std::size_t in_channels = 1;
  std::vector<std::size_t> channels = {8, 16};

  TaskKind task() const {
    return kind == TargetKind::MlpRegressor ? TaskKind::Regression : TaskKind::Classification;
  }
};

/// Result of one forward pass over a batch (values only, no tape).
struct PredictionBatch {
  std::vector<std::size_t> indices;
  /// Class probabilities [d, C] for classifiers, predictions [d, 1] for regressors.
  Tensor predictions;
  /// Tapped features: [d, F] for MLPs, [d, C, H, W] for the CNN.
  Tensor features;
  std::optional<std::vector<double>> losses;

  std::size_t size() const { return indices.size(); }
};

class TargetModel {
 public:
  TargetModel(const TargetConfig& config, std::uint64_t seed);

  struct Output {
    Var prediction;  ///< logits [N,C] or values [N,1]
    Var features;    ///< tapped block output
  };

  /// `inputs` is [N, input_dim]; the CNN views each row as its grid.
  Output forward(Tape& tape, const Tensor& inputs);

  const TargetConfig& config() const noexcept { return config_; }
  TaskKind task() const noexcept { return config_.task(); }
  /// Channel count (CNN) or width (MLP) of the tapped features.
  std::size_t feature_dim() const noexcept;
  std::vector<Parameter*> parameters();

 private:
  TargetConfig config_;
  std::vector<Linear> dense_;
  std::vector<Conv2d> convs_;
  Linear head_;
};

/// Inference pass: probabilities / predictions plus tapped features.
PredictionBatch target_forward(TargetModel& model, const Tensor& inputs,
                               std::span<const std::size_t> indices = {});

/// Per-sample losses from final predictions: cross-entropy -ln(max(p_y, 1e-12))
/// on probability rows, or squared error on [d,1] predictions.
std::vector<double> per_sample_loss(const Tensor& predictions, std::span<const double> labels,
                                    TaskKind task);

/// Mean of per-sample losses over the batch.
double batch_target_loss(std::span<const double> losses);

/// Class labels stored as doubles -> ints, checked against the class count.
std::vector<int> class_labels(std::span<const double> labels, std::size_t num_classes);

}  // namespace listal::models
