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

#include "jm3d/training/optimizer.h"

#include <cmath>
#include <numbers>

#include "jm3d/common/errors.h"

namespace jm3d::training {
namespace ad = autodiff;

double cosine_lr(std::uint64_t step, std::uint64_t total_steps, double base_lr) {
  if (total_steps == 0 || step > total_steps) {
    throw ContractError("cosine_lr: step " + std::to_string(step) +
                        " outside [0, " + std::to_string(total_steps) + "]");
  }
  const double frac = static_cast<double>(step) / static_cast<double>(total_steps);
  return base_lr * 0.5 * (1.0 + std::cos(std::numbers::pi * frac));
}

void adamw_step(ad::ParameterStore& params, const ad::GradientMap& grads,
                OptimizerState& state, double lr, const AdamWConfig& config) {
  for (const auto& [name, g] : grads) {
    if (!params.contains(name)) {
      throw ContractError("adamw_step: gradient for unknown parameter " + name);
    }
    if (g.shape() != params.value(name).shape()) {
      throw DimensionError("adamw_step: gradient " + ad::shape_string(g.shape()) +
                           " for parameter " + name + " " +
                           ad::shape_string(params.value(name).shape()));
    }
  }
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(config.beta1, t);
  const double c2 = 1.0 - std::pow(config.beta2, t);
  for (const auto& [name, g] : grads) {
    const bool decay = !params.entry(name).no_decay;
    ad::Tensor& p = params.mutable_value(name);
    auto mi = state.m.try_emplace(name, ad::Tensor::zeros(p.shape())).first;
    auto vi = state.v.try_emplace(name, ad::Tensor::zeros(p.shape())).first;
    auto pv = p.values();
    auto mv = mi->second.values();
    auto vv = vi->second.values();
    const auto gv = g.values();
    for (std::size_t i = 0; i < pv.size(); ++i) {
      if (decay) pv[i] *= 1.0 - lr * config.weight_decay;
      mv[i] = config.beta1 * mv[i] + (1.0 - config.beta1) * gv[i];
      vv[i] = config.beta2 * vv[i] + (1.0 - config.beta2) * gv[i] * gv[i];
      pv[i] -= lr * (mv[i] / c1) / (std::sqrt(vv[i] / c2) + config.eps);
    }
  }
}

}  // namespace jm3d::training
