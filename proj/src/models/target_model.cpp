// SPDX-License-Identifier: Apache-2.0
#include <listal/models/target_model.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace listal::models {

std::string to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::MlpClassifier: return "mlp-classifier";
    case TargetKind::MlpRegressor: return "mlp-regressor";
    case TargetKind::TinyCnnClassifier: return "tiny-cnn-classifier";
  }
  return "?";
}

TargetKind parse_target_kind(const std::string& text) {
  if (text == "mlp-classifier") return TargetKind::MlpClassifier;
  if (text == "mlp-regressor") return TargetKind::MlpRegressor;
  if (text == "tiny-cnn-classifier") return TargetKind::TinyCnnClassifier;
  throw std::invalid_argument("unknown target model kind '" + text + "'");
}

TargetModel::TargetModel(const TargetConfig& config, std::uint64_t seed) : config_(config) {
  Rng rng(seed);
  if (config_.kind == TargetKind::TinyCnnClassifier) {
    if (config_.input_dim != config_.grid * config_.grid * config_.in_channels)
      throw std::invalid_argument("tiny-cnn input_dim must equal grid*grid*in_channels");
    if (config_.channels.empty()) throw std::invalid_argument("tiny-cnn needs at least one conv block");
    std::size_t in = config_.in_channels;
    for (std::size_t i = 0; i < config_.channels.size(); ++i) {
      convs_.emplace_back("conv" + std::to_string(i), in, config_.channels[i], 3, rng);
      in = config_.channels[i];
    }
    head_ = Linear("head", in, config_.num_classes, rng);
    return;
  }
  std::size_t in = config_.input_dim;
  for (std::size_t i = 0; i < config_.hidden.size(); ++i) {
    dense_.emplace_back("dense" + std::to_string(i), in, config_.hidden[i], rng);
    in = config_.hidden[i];
  }
  const std::size_t out = config_.kind == TargetKind::MlpRegressor ? 1 : config_.num_classes;
  head_ = Linear("head", in, out, rng);
}

std::size_t TargetModel::feature_dim() const noexcept {
  if (config_.kind == TargetKind::TinyCnnClassifier) return config_.channels.back();
  return config_.hidden.empty() ? config_.input_dim : config_.hidden.back();
}

TargetModel::Output TargetModel::forward(Tape& tape, const Tensor& inputs) {
  if (inputs.rank() != 2 || inputs.dim(1) != config_.input_dim)
    throw ad::ShapeError("target model expects [N," + std::to_string(config_.input_dim) +
                         "] inputs, got " + ad::shape_string(inputs.shape()));
  if (config_.kind == TargetKind::TinyCnnClassifier) {
    Var x = tape.constant(
        inputs.reshaped({inputs.dim(0), config_.in_channels, config_.grid, config_.grid}));
    for (auto& conv : convs_) x = ad::leaky_relu(conv(tape, x), kLeakySlope);
    return {head_(tape, ad::global_average_pool(x)), x};
  }
  Var x = tape.constant(inputs);
  for (auto& layer : dense_) x = ad::leaky_relu(layer(tape, x), kLeakySlope);
  return {head_(tape, x), x};
}

std::vector<Parameter*> TargetModel::parameters() {
  std::vector<Parameter*> out;
  for (auto& conv : convs_) conv.collect(out);
  for (auto& layer : dense_) layer.collect(out);
  head_.collect(out);
  return out;
}

PredictionBatch target_forward(TargetModel& model, const Tensor& inputs,
                               std::span<const std::size_t> indices) {
  Tape tape;
  auto out = model.forward(tape, inputs);
  PredictionBatch batch;
  const std::size_t n = inputs.dim(0);
  if (indices.empty()) {
    batch.indices.resize(n);
    for (std::size_t i = 0; i < n; ++i) batch.indices[i] = i;
  } else {
    if (indices.size() != n) throw std::invalid_argument("target_forward: index count differs from rows");
    batch.indices.assign(indices.begin(), indices.end());
  }
  batch.predictions = model.task() == TaskKind::Classification
                          ? ad::softmax(out.prediction).value()
                          : out.prediction.value();
  batch.features = out.features.value();
  return batch;
}

std::vector<int> class_labels(std::span<const double> labels, std::size_t num_classes) {
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double y = labels[i];
    if (!(y >= 0.0) || y >= static_cast<double>(num_classes) || y != std::floor(y))
      throw std::out_of_range("label " + std::to_string(y) + " at position " + std::to_string(i) +
                              " outside class range [0," + std::to_string(num_classes) + ")");
    out[i] = static_cast<int>(y);
  }
  return out;
}

std::vector<double> per_sample_loss(const Tensor& predictions, std::span<const double> labels,
                                    TaskKind task) {
  if (predictions.rank() != 2 || predictions.dim(0) != labels.size())
    throw ad::ShapeError("per_sample_loss: predictions " + ad::shape_string(predictions.shape()) +
                         " vs " + std::to_string(labels.size()) + " labels");
  const std::size_t rows = predictions.dim(0);
  std::vector<double> losses(rows);
  if (task == TaskKind::Classification) {
    const auto classes = class_labels(labels, predictions.dim(1));
    for (std::size_t r = 0; r < rows; ++r)
      losses[r] = -std::log(std::max(predictions.at(r, static_cast<std::size_t>(classes[r])), 1e-12));
    return losses;
  }
  if (predictions.dim(1) != 1) throw ad::ShapeError("regression predictions must be [d,1]");
  for (std::size_t r = 0; r < rows; ++r) {
    const double e = predictions.at(r, 0) - labels[r];
    losses[r] = e * e;
  }
  return losses;
}

double batch_target_loss(std::span<const double> losses) {
  if (losses.empty()) throw std::invalid_argument("batch_target_loss: empty batch");
  double total = 0.0;
  for (double l : losses) total += l;
  return total / static_cast<double>(losses.size());
}

}  // namespace listal::models
