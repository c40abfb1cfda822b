// SPDX-License-Identifier: Apache-2.0
#include <listal/autodiff/tape.hpp>

#include <stdexcept>

namespace listal::ad {

Parameter::Parameter(std::string name_, Tensor value_)
    : name(std::move(name_)), value(std::move(value_)), grad(value.shape(), 0.0) {}

const Tensor& Var::value() const {
  if (!tape_) throw std::logic_error("Var is not bound to a tape");
  return tape_->value(id_);
}

Var Tape::constant(Tensor value) {
  Node node;
  node.op = "constant";
  node.value = std::move(value);
  nodes_.push_back(std::move(node));
  return {this, nodes_.size() - 1};
}

Var Tape::input(Tensor value) {
  Node node;
  node.op = "input";
  node.value = std::move(value);
  node.requires_grad = true;
  nodes_.push_back(std::move(node));
  return {this, nodes_.size() - 1};
}

Var Tape::parameter(Parameter& param) {
  Node node;
  node.op = "parameter";
  node.value = param.value;
  node.param = &param;
  node.requires_grad = true;
  nodes_.push_back(std::move(node));
  return {this, nodes_.size() - 1};
}

Var Tape::record(const char* op, Tensor value, std::vector<std::size_t> inputs,
                 BackwardFn backward) {
  Node node;
  node.op = op;
  node.value = std::move(value);
  for (auto id : inputs) {
    if (id >= nodes_.size())
      throw std::logic_error(std::string(op) + ": input node is not on this tape");
    node.requires_grad = node.requires_grad || nodes_[id].requires_grad;
  }
  node.inputs = std::move(inputs);
  if (node.requires_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return {this, nodes_.size() - 1};
}

Tensor& Tape::grad_buffer(std::size_t id) {
  Node& node = nodes_.at(id);
  if (node.grad.shape() != node.value.shape()) node.grad = Tensor(node.value.shape(), 0.0);
  return node.grad;
}

Tensor Tape::grad(Var v) const {
  const Node& node = nodes_.at(v.id());
  if (node.grad.shape() != node.value.shape()) return Tensor(node.value.shape(), 0.0);
  return node.grad;
}

void Tape::backward(Var seed) {
  if (!owns(seed)) throw std::invalid_argument("backward: seed is not a node of this tape");
  if (value(seed).size() != 1)
    throw ShapeError("backward: seed must be scalar, got " + shape_string(value(seed).shape()));

  for (auto& node : nodes_) node.grad = Tensor();
  grad_buffer(seed.id())[0] = 1.0;

  for (std::size_t id = seed.id() + 1; id-- > 0;) {
    Node& node = nodes_[id];
    if (!node.requires_grad || node.grad.empty()) continue;
    if (node.param) {
      auto& acc = node.param->grad;
      if (acc.shape() != node.value.shape()) acc = Tensor(node.value.shape(), 0.0);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += node.grad[i];
    } else if (node.backward) {
      node.backward(*this, id);
    }
  }
}

}  // namespace listal::ad
