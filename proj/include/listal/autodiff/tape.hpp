// SPDX-License-Identifier: Apache-2.0
/**
 * @file   tape.hpp
 * @brief  Reverse-mode differentiation tape.
 *
 * Every primitive appends one node holding its forward value. Nodes are
 * appended in evaluation order, so the tape is topologically sorted and the
 * reverse sweep is a single backwards walk over it.
 */
#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <string>
#include <vector>

#include <listal/autodiff/tensor.hpp>

namespace listal::ad {

/// A trainable tensor together with its accumulated gradient.
struct Parameter {
  Parameter() = default;
  Parameter(std::string name, Tensor value);

  std::string name;
  Tensor value;
  Tensor grad;

  void zero_grad() { grad.fill(0.0); }
};

class Tape;

/// Handle to a node on a tape.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape* tape() const noexcept { return tape_; }
  std::size_t id() const noexcept { return id_; }
  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }

 private:
  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

class Tape {
 public:
  /// Called during the reverse sweep with the node's own id.
  using BackwardFn = std::function<void(Tape&, std::size_t)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Leaf that never receives a gradient. Copying the value in is the
  /// gradient stop used between the target model and the loss predictor.
  Var constant(Tensor value);
  /// Leaf whose gradient is readable through grad() after backward().
  Var input(Tensor value);
  /// Leaf bound to a parameter; backward() adds into parameter.grad.
  Var parameter(Parameter& param);

  /// Append a primitive result. `backward` may be empty when no input
  /// requires a gradient.
  Var record(const char* op, Tensor value, std::vector<std::size_t> inputs, BackwardFn backward);

  /// Reverse sweep from a scalar node of this tape. Gradients of
  /// parameters accumulate additively; node gradients are reset first.
  void backward(Var seed);

  const Tensor& value(std::size_t id) const { return nodes_.at(id).value; }
  const Tensor& value(Var v) const { return value(v.id()); }
  bool requires_grad(std::size_t id) const { return nodes_.at(id).requires_grad; }
  bool requires_grad(Var v) const { return requires_grad(v.id()); }
  const char* op(std::size_t id) const { return nodes_.at(id).op; }

  /// Gradient of the last seed w.r.t. node `v` (zeros if unreached).
  Tensor grad(Var v) const;

  /// Mutable gradient buffer of a node, allocated on first use. Backward
  /// rules accumulate into the buffers of their inputs through this.
  Tensor& grad_buffer(std::size_t id);

  std::size_t size() const noexcept { return nodes_.size(); }
  bool owns(Var v) const noexcept { return v.tape() == this && v.id() < nodes_.size(); }

 private:
  struct Node {
    const char* op = "";
    Tensor value;
    Tensor grad;
    std::vector<std::size_t> inputs;
    BackwardFn backward;
    Parameter* param = nullptr;
    bool requires_grad = false;
  };
  // deque keeps references to existing nodes stable while appending
  std::deque<Node> nodes_;
};

}  // namespace listal::ad
