// Copyright 2026 The jm3d Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jm3d/autodiff/tape.h"

#include <utility>

#include "jm3d/common/errors.h"

namespace jm3d::autodiff {

const Tensor& Var::value() const {
  if (!tape_) throw ContractError("use of an unbound Var");
  return tape_->value(id_);
}

bool Var::requires_grad() const {
  return tape_ != nullptr && tape_->requires_grad(id_);
}

Var Tape::constant(Tensor value) {
  nodes_.push_back(Node{std::move(value), false, {}, {}, std::nullopt});
  return Var(this, nodes_.size() - 1);
}

Var Tape::leaf(Tensor value) {
  nodes_.push_back(Node{std::move(value), true, {}, {}, std::nullopt});
  return Var(this, nodes_.size() - 1);
}

Var Tape::parameter(const std::string& name, const Tensor& value) {
  if (auto it = parameters_.find(name); it != parameters_.end()) {
    return Var(this, it->second);
  }
  Var v = leaf(value);
  parameters_.emplace(name, v.id_);
  return v;
}

Var Tape::record(Tensor value, std::vector<Var> inputs, BackwardFn backward) {
  Node node;
  node.value = std::move(value);
  node.inputs.reserve(inputs.size());
  for (const Var& in : inputs) {
    if (in.tape_ != this) {
      throw ContractError("op input recorded on a different tape");
    }
    node.inputs.push_back(in.id_);
    node.requires_grad = node.requires_grad || nodes_[in.id_].requires_grad;
  }
  if (node.requires_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

GradientMap Tape::backward(Var loss) {
  if (loss.tape_ != this) {
    throw ContractError("backward: loss is not on this tape");
  }
  const Node& root = nodes_[loss.id_];
  if (!root.value.is_scalar()) {
    throw ContractError("backward: loss must be scalar, got shape " +
                        shape_string(root.value.shape()));
  }
  for (Node& n : nodes_) n.grad.reset();
  nodes_[loss.id_].grad = Tensor::filled(root.value.shape(), 1.0);

  std::vector<const Tensor*> input_values;
  std::vector<Tensor*> input_grads;
  for (std::size_t i = loss.id_ + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (!node.grad || !node.backward) continue;
    input_values.clear();
    input_grads.clear();
    for (std::size_t in : node.inputs) {
      Node& src = nodes_[in];
      input_values.push_back(&src.value);
      if (src.requires_grad) {
        if (!src.grad) src.grad = Tensor::zeros(src.value.shape());
        input_grads.push_back(&*src.grad);
      } else {
        input_grads.push_back(nullptr);
      }
    }
    node.backward(BackwardContext{input_values, node.value, *node.grad,
                                  input_grads});
  }

  GradientMap out;
  for (const auto& [name, id] : parameters_) {
    const Node& n = nodes_[id];
    out.emplace(name, n.grad ? *n.grad : Tensor::zeros(n.value.shape()));
  }
  return out;
}

Tensor Tape::grad(Var v) const {
  const Node& n = nodes_.at(v.id_);
  return n.grad ? *n.grad : Tensor::zeros(n.value.shape());
}

std::vector<std::string> Tape::parameter_names() const {
  std::vector<std::string> names;
  for (const auto& [name, id] : parameters_) names.push_back(name);
  return names;
}

}  // namespace jm3d::autodiff
