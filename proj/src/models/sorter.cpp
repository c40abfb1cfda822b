// SPDX-License-Identifier: Apache-2.0
#include <listal/models/sorter.hpp>

#include <stdexcept>

namespace listal::models {

Sorter::Sorter(const SorterConfig& config, std::uint64_t seed) : config_(config) {
  if (config_.length < 2) throw std::invalid_argument("sorter length must be at least 2");
  if (config_.hidden == 0) throw std::invalid_argument("sorter hidden size must be positive");
  Rng rng(seed);
  forward_cell_ = GruCell("sorter.gru_fwd", 1, config_.hidden, rng);
  backward_cell_ = GruCell("sorter.gru_bwd", 1, config_.hidden, rng);
  head_ = Linear("sorter.head", 2 * config_.hidden, 1, rng);
}

Var Sorter::forward(Tape& tape, Var values) {
  const auto& shape = values.shape();
  if (shape.size() != 2 || shape[1] != config_.length)
    throw ad::ShapeError("sorter configured for sequence length " +
                         std::to_string(config_.length) + ", got input " +
                         ad::shape_string(shape));
  const std::size_t batch = shape[0];
  const std::size_t d = config_.length;

  Var x = ad::minmax_normalize(values);
  std::vector<Var> steps(d);
  for (std::size_t t = 0; t < d; ++t) steps[t] = ad::slice(x, 1, t, t + 1);

  Var zeros = tape.constant(Tensor({batch, config_.hidden}, 0.0));
  std::vector<Var> fwd(d), bwd(d);
  {
    auto cell = forward_cell_.bind(tape, frozen_);
    Var h = zeros;
    for (std::size_t t = 0; t < d; ++t) fwd[t] = h = forward_cell_.step(cell, steps[t], h);
  }
  {
    auto cell = backward_cell_.bind(tape, frozen_);
    Var h = zeros;
    for (std::size_t t = d; t-- > 0;) bwd[t] = h = backward_cell_.step(cell, steps[t], h);
  }
  Var w = frozen_ ? tape.constant(head_.weight.value) : tape.parameter(head_.weight);
  Var b = frozen_ ? tape.constant(head_.bias.value) : tape.parameter(head_.bias);
  std::vector<Var> outputs(d);
  for (std::size_t t = 0; t < d; ++t) {
    const Var both[2] = {fwd[t], bwd[t]};
    outputs[t] = ad::add(ad::matmul(ad::concat(both, 1), w), b);
  }
  return ad::concat(outputs, 1);
}

std::vector<Parameter*> Sorter::parameters() {
  std::vector<Parameter*> out;
  forward_cell_.collect(out);
  backward_cell_.collect(out);
  head_.collect(out);
  return out;
}

std::vector<double> sorter_forward(Sorter& sorter, std::span<const double> values) {
  Tape tape;
  const Tensor& out = sorter.forward(tape, tape.constant(Tensor::row(values))).value();
  return {out.values().begin(), out.values().end()};
}

}  // namespace listal::models
