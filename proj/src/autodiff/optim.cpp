// SPDX-License-Identifier: Apache-2.0
#include <listal/autodiff/optim.hpp>

#include <cmath>

namespace listal::ad {

OptimizerConfig OptimizerConfig::sgd(double lr, double momentum, double weight_decay) {
  OptimizerConfig c;
  c.kind = OptimizerKind::SgdMomentum;
  c.learning_rate = lr;
  c.momentum = momentum;
  c.weight_decay = weight_decay;
  return c;
}

OptimizerConfig OptimizerConfig::adam(double lr) {
  OptimizerConfig c;
  c.kind = OptimizerKind::Adam;
  c.learning_rate = lr;
  return c;
}

Optimizer::Optimizer(OptimizerConfig config) : config_(config) {
  set_learning_rate(config.learning_rate);
}

void Optimizer::set_learning_rate(double lr) {
  if (!(lr > 0.0)) throw std::invalid_argument("learning rate must be strictly positive");
  config_.learning_rate = lr;
}

void Optimizer::step(std::span<Parameter* const> params) {
  for (const Parameter* p : params) {
    if (p->grad.shape() != p->value.shape())
      throw ShapeError("optimizer: gradient of '" + p->name + "' has shape " +
                       shape_string(p->grad.shape()));
    if (!p->grad.all_finite()) throw NonFiniteGradient(p->name);
  }
  if (first_.empty()) {
    for (const Parameter* p : params) {
      first_.emplace_back(p->value.shape(), 0.0);
      if (config_.kind == OptimizerKind::Adam) second_.emplace_back(p->value.shape(), 0.0);
    }
  }
  if (first_.size() != params.size())
    throw std::invalid_argument("optimizer: parameter list changed between steps");
  for (std::size_t k = 0; k < params.size(); ++k)
    if (first_[k].shape() != params[k]->value.shape())
      throw ShapeError("optimizer: moment buffer shape mismatch for '" + params[k]->name + "'");

  ++steps_;
  const double lr = config_.learning_rate;
  const double wd = config_.weight_decay;
  if (config_.kind == OptimizerKind::SgdMomentum) {
    for (std::size_t k = 0; k < params.size(); ++k) {
      Parameter& p = *params[k];
      Tensor& buf = first_[k];
      for (std::size_t i = 0; i < p.value.size(); ++i) {
        const double g = p.grad[i] + wd * p.value[i];
        buf[i] = config_.momentum * buf[i] + g;
        p.value[i] -= lr * buf[i];
      }
    }
    return;
  }
  const double t = static_cast<double>(steps_);
  const double c1 = 1.0 - std::pow(config_.beta1, t);
  const double c2 = 1.0 - std::pow(config_.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    Parameter& p = *params[k];
    Tensor& m = first_[k];
    Tensor& v = second_[k];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i] + wd * p.value[i];
      m[i] = config_.beta1 * m[i] + (1.0 - config_.beta1) * g;
      v[i] = config_.beta2 * v[i] + (1.0 - config_.beta2) * g * g;
      p.value[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + config_.epsilon);
    }
  }
}

void zero_grad(std::span<Parameter* const> params) {
  for (Parameter* p : params) {
    if (p->grad.shape() != p->value.shape()) p->grad = Tensor(p->value.shape(), 0.0);
    else p->zero_grad();
  }
}

}  // namespace listal::ad
