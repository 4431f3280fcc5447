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

#include "jm3d/alignment/heads.h"

#include <cmath>

#include "jm3d/autodiff/ops.h"
#include "jm3d/common/errors.h"

namespace jm3d::alignment {
namespace ad = autodiff;

AlignmentHeads::AlignmentHeads(HeadsConfig config) : config_(config) {
  if (config_.dim == 0 || config_.hidden == 0 || config_.parents == 0) {
    throw ConfigError("alignment heads: dim, hidden and parents must be positive");
  }
  if (!(config_.temperature > 0.0) || !std::isfinite(config_.temperature)) {
    throw ConfigError("alignment heads: temperature must be positive");
  }
}

void AlignmentHeads::init_parameters(ad::ParameterStore& store, Rng& rng) const {
  auto weight = [&](std::size_t fan_in, std::size_t fan_out, double gain) {
    ad::Tensor w = ad::Tensor::zeros({fan_in, fan_out});
    const double sd = std::sqrt(gain / static_cast<double>(fan_in));
    for (double& v : w.values()) v = sd * rng.normal();
    return w;
  };
  if (config_.learn_temperature) {
    store.add("align.log_tau", ad::Tensor::scalar(std::log(config_.temperature)),
              true);
  }
  store.add("align.theta.w1", weight(config_.dim, config_.hidden, 2.0));
  store.add("align.theta.b1", ad::Tensor::zeros({config_.hidden}), true);
  store.add("align.theta.w2", weight(config_.hidden, config_.parents, 1.0));
  store.add("align.theta.b2", ad::Tensor::zeros({config_.parents}), true);
}

ad::Var AlignmentHeads::inverse_temperature(ad::Tape& tape,
                                            const ad::ParameterStore& store) const {
  if (!config_.learn_temperature) {
    return tape.constant(ad::Tensor::scalar(1.0 / config_.temperature));
  }
  return ad::exp(ad::scale(store.bind(tape, "align.log_tau"), -1.0));
}

double AlignmentHeads::temperature(const ad::ParameterStore& store) const {
  if (!config_.learn_temperature) return config_.temperature;
  return std::exp(store.value("align.log_tau")[0]);
}

ad::Var AlignmentHeads::parent_logits(ad::Tape& tape,
                                      const ad::ParameterStore& store,
                                      ad::Var features) const {
  if (features.value().rank() != 2 || features.value().cols() != config_.dim) {
    throw DimensionError("parent_logits: expected [N x " +
                         std::to_string(config_.dim) + "], got " +
                         ad::shape_string(features.shape()));
  }
  ad::Var h = ad::relu(ad::add_bias(
      ad::matmul(features, store.bind(tape, "align.theta.w1")),
      store.bind(tape, "align.theta.b1")));
  return ad::add_bias(ad::matmul(h, store.bind(tape, "align.theta.w2")),
                      store.bind(tape, "align.theta.b2"));
}

}  // namespace jm3d::alignment
