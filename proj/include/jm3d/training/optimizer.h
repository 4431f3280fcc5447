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

#ifndef JM3D_TRAINING_OPTIMIZER_H_
#define JM3D_TRAINING_OPTIMIZER_H_

#include <cstdint>
#include <map>
#include <string>

#include "jm3d/autodiff/parameters.h"
#include "jm3d/autodiff/tape.h"
#include "jm3d/autodiff/tensor.h"

namespace jm3d::training {

// base_lr * (1 + cos(pi * step / total_steps)) / 2 for 0 <= step <= total.
// Throws ContractError outside that range or for total_steps == 0.
double cosine_lr(std::uint64_t step, std::uint64_t total_steps, double base_lr);

struct AdamWConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

struct OptimizerState {
  std::map<std::string, autodiff::Tensor> m;
  std::map<std::string, autodiff::Tensor> v;
  std::uint64_t step = 0;

  friend bool operator==(const OptimizerState&, const OptimizerState&) = default;
};

// One decoupled-weight-decay Adam update:
//   p <- p * (1 - lr * wd)            (skipped for no_decay entries)
//   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2
//   p <- p - lr * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
// Parameters without a gradient are left untouched. Throws DimensionError
// when a gradient does not match its parameter, ContractError for a gradient
// naming an unknown parameter.
void adamw_step(autodiff::ParameterStore& params, const autodiff::GradientMap& grads,
                OptimizerState& state, double lr, const AdamWConfig& config);

}  // namespace jm3d::training

#endif  // JM3D_TRAINING_OPTIMIZER_H_
