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

#ifndef JM3D_AUTODIFF_TAPE_H_
#define JM3D_AUTODIFF_TAPE_H_

#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jm3d/autodiff/tensor.h"

namespace jm3d::autodiff {

class Tape;

// Handle to a node recorded on a Tape. Cheap to copy; valid as long as the
// tape that produced it.
class Var {
 public:
  Var() = default;

  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }
  bool requires_grad() const;
  std::size_t node_id() const { return id_; }
  Tape& tape() const { return *tape_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

// What a backward rule sees. grad_inputs[k] is null when input k does not
// require a gradient; otherwise the rule accumulates into it.
struct BackwardContext {
  std::span<const Tensor* const> inputs;
  const Tensor& output;
  const Tensor& grad_output;
  std::span<Tensor* const> grad_inputs;
};

using BackwardFn = std::function<void(const BackwardContext&)>;

using GradientMap = std::map<std::string, Tensor>;

// Reverse-mode tape. Records are appended in execution order, so the record
// list is already topologically sorted; backward() walks it once in reverse.
//
// Single-threaded. Distinct tapes share nothing and may live on different
// threads.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Value that never receives a gradient.
  Var constant(Tensor value);

  // Unnamed differentiable input.
  Var leaf(Tensor value);

  // Named trainable parameter. Registering the same name twice returns the
  // node created the first time, so shared weights accumulate correctly.
  Var parameter(const std::string& name, const Tensor& value);

  // Appends an op result. When no input requires a gradient the node is
  // recorded as a constant and `backward` is dropped.
  Var record(Tensor value, std::vector<Var> inputs, BackwardFn backward);

  // Populates gradients for every node reachable from `loss`. Gradients are
  // reset first, so calling it again on the same tape reproduces the same
  // result bit-for-bit. Throws ContractError for a non-scalar loss or a
  // loss that belongs to another tape.
  GradientMap backward(Var loss);

  // Gradient of a node after backward(); zeros if it was not reached.
  Tensor grad(Var v) const;

  const Tensor& value(std::size_t id) const { return nodes_.at(id).value; }
  bool requires_grad(std::size_t id) const {
    return nodes_.at(id).requires_grad;
  }

  std::size_t size() const { return nodes_.size(); }
  std::vector<std::string> parameter_names() const;

 private:
  struct Node {
    Tensor value;
    bool requires_grad = false;
    std::vector<std::size_t> inputs;
    BackwardFn backward;
    std::optional<Tensor> grad;
  };

  std::deque<Node> nodes_;
  std::map<std::string, std::size_t> parameters_;
};

}  // namespace jm3d::autodiff

#endif  // JM3D_AUTODIFF_TAPE_H_
