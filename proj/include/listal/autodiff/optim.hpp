// SPDX-License-Identifier: Apache-2.0
/**
 * @file   optim.hpp
 * @brief  SGD with momentum / weight decay and Adam.
 *
 * Update rules follow the common deep-learning convention:
 *   SGD:  g += wd * theta; buf = mu * buf + g; theta -= lr * buf
 *   Adam: m = b1 m + (1-b1) g; v = b2 v + (1-b2) g^2;
 *         theta -= lr * m_hat / (sqrt(v_hat) + eps)
 */
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <listal/autodiff/tape.hpp>

namespace listal::ad {

enum class OptimizerKind { SgdMomentum, Adam };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Adam;
  double learning_rate = 1e-3;
  double momentum = 0.9;
  double weight_decay = 0.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static OptimizerConfig sgd(double lr = 0.1, double momentum = 0.9, double weight_decay = 5e-4);
  static OptimizerConfig adam(double lr = 1e-3);
};

/// Raised when a gradient holds NaN/Inf; no parameter is modified.
class NonFiniteGradient : public std::runtime_error {
 public:
  explicit NonFiniteGradient(const std::string& parameter)
      : std::runtime_error("non-finite gradient in parameter '" + parameter + "'"),
        parameter_(parameter) {}
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

class Optimizer {
 public:
  explicit Optimizer(OptimizerConfig config);

  const OptimizerConfig& config() const noexcept { return config_; }
  std::int64_t steps() const noexcept { return steps_; }
  void set_learning_rate(double lr);

  /// Apply one update using each parameter's accumulated grad. Moment
  /// buffers are bound to parameters by position on the first call.
  void step(std::span<Parameter* const> params);

 private:
  OptimizerConfig config_;
  std::int64_t steps_ = 0;
  std::vector<Tensor> first_;
  std::vector<Tensor> second_;
};

void zero_grad(std::span<Parameter* const> params);

}  // namespace listal::ad
