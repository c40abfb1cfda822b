// SPDX-License-Identifier: Apache-2.0
/**
 * @file   layers.hpp
 * @brief  Parameterized building blocks shared by the target models, the
 *         loss predictor and the sorter.
 *
 * All weights start uniform in +-1/sqrt(fan_in).
 */
#pragma once

#include <string>
#include <vector>

#include <listal/autodiff/ops.hpp>
#include <listal/autodiff/tape.hpp>
#include <listal/seed.hpp>

namespace listal::models {

using ad::Parameter;
using ad::Tape;
using ad::Tensor;
using ad::Var;

inline constexpr double kLeakySlope = 0.01;

ad::Tensor uniform_tensor(ad::Shape shape, double bound, Rng& rng);

/// y = x W + b with W: [in, out], b: [1, out].
struct Linear {
  Linear() = default;
  Linear(const std::string& name, std::size_t in, std::size_t out, Rng& rng);

  Parameter weight;
  Parameter bias;

  std::size_t in_features() const { return weight.value.dim(0); }
  std::size_t out_features() const { return weight.value.dim(1); }

  Var operator()(Tape& tape, Var x);
  void collect(std::vector<Parameter*>& out);
};

/// Same-padded stride-1 convolution. weight: [out, in, k, k], bias: [out].
struct Conv2d {
  Conv2d() = default;
  Conv2d(const std::string& name, std::size_t in_channels, std::size_t out_channels,
         std::size_t kernel, Rng& rng);

  Parameter weight;
  Parameter bias;

  Var operator()(Tape& tape, Var x);
  void collect(std::vector<Parameter*>& out);
};

/// Gated recurrent unit with gates ordered (reset, update, candidate):
///   r = sig(x Wr + br + h Ur + cr)
///   z = sig(x Wz + bz + h Uz + cz)
///   n = tanh(x Wn + bn + r * (h Un + cn))
///   h' = (1 - z) * n + z * h
struct GruCell {
  GruCell() = default;
  GruCell(const std::string& name, std::size_t input, std::size_t hidden, Rng& rng);

  Parameter w_input;   // [input, 3H]
  Parameter w_hidden;  // [H, 3H]
  Parameter b_input;   // [1, 3H]
  Parameter b_hidden;  // [1, 3H]

  /// Parameters bound to one tape, reused across time steps.
  struct Bound {
    Var w_input, w_hidden, b_input, b_hidden;
  };

  std::size_t hidden_size() const { return w_hidden.value.dim(0); }
  /// Frozen binding records the weights as constants: gradients still flow
  /// to the inputs, but no weight gradients are computed.
  Bound bind(Tape& tape, bool frozen = false);
  Var step(const Bound& cell, Var x, Var h) const;
  void collect(std::vector<Parameter*>& out);
};

}  // namespace listal::models
