// SPDX-License-Identifier: Apache-2.0
/**
 * @file   loss_predictor.hpp
 * @brief  Loss-prediction head: GAP -> FC(F->H) -> LeakyReLU(0.01) -> FC(H->1).
 *
 * Spatial features [N,C,H,W] are averaged per channel; flat features [N,F]
 * pass the pooling stage unchanged.
 */
#pragma once

#include <cstdint>
#include <vector>

#include <listal/models/layers.hpp>

namespace listal::models {

struct LossPredictorConfig {
  std::size_t feature_dim = 64;
  std::size_t hidden = 128;
};

class LossPredictor {
 public:
  LossPredictor(const LossPredictorConfig& config, std::uint64_t seed);

  /// features -> [N,1] predicted losses. Pass features as a tape constant
  /// so no gradient reaches the model that produced them.
  Var forward(Tape& tape, Var features);

  const LossPredictorConfig& config() const noexcept { return config_; }
  std::vector<Parameter*> parameters();

  Linear& first() { return fc1_; }
  Linear& second() { return fc2_; }

 private:
  LossPredictorConfig config_;
  Linear fc1_;
  Linear fc2_;
};

/// Inference: one predicted loss per row of `features`.
std::vector<double> predict_losses(LossPredictor& lpm, const Tensor& features);

}  // namespace listal::models
