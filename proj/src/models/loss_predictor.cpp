// SPDX-License-Identifier: Apache-2.0
#include <listal/models/loss_predictor.hpp>

namespace listal::models {

LossPredictor::LossPredictor(const LossPredictorConfig& config, std::uint64_t seed)
    : config_(config) {
  Rng rng(seed);
  fc1_ = Linear("lpm.fc1", config_.feature_dim, config_.hidden, rng);
  fc2_ = Linear("lpm.fc2", config_.hidden, 1, rng);
}

Var LossPredictor::forward(Tape& tape, Var features) {
  const auto& shape = features.shape();
  const bool flat = shape.size() == 2;
  const bool spatial = shape.size() == 4;
  if ((!flat && !spatial) || shape[1] != config_.feature_dim)
    throw ad::ShapeError("loss predictor expects [N," + std::to_string(config_.feature_dim) +
                         "] or [N," + std::to_string(config_.feature_dim) +
                         ",H,W] features, got " + ad::shape_string(shape));
  Var pooled = ad::global_average_pool(features);
  return fc2_(tape, ad::leaky_relu(fc1_(tape, pooled), kLeakySlope));
}

std::vector<Parameter*> LossPredictor::parameters() {
  std::vector<Parameter*> out;
  fc1_.collect(out);
  fc2_.collect(out);
  return out;
}

std::vector<double> predict_losses(LossPredictor& lpm, const Tensor& features) {
  Tape tape;
  const Tensor& out = lpm.forward(tape, tape.constant(features)).value();
  return {out.values().begin(), out.values().end()};
}

}  // namespace listal::models
