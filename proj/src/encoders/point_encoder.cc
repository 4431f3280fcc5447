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

#include "jm3d/encoders/point_encoder.h"

#include <cmath>
#include <vector>

#include "jm3d/autodiff/ops.h"
#include "jm3d/common/errors.h"

namespace jm3d::encoders {
namespace ad = autodiff;

SharedMlpMaxPoolEncoder::SharedMlpMaxPoolEncoder(PointEncoderConfig config)
    : config_(config) {
  if (config_.hidden == 0 || config_.dim == 0) {
    throw ConfigError("point encoder: hidden and dim must be positive");
  }
}

void SharedMlpMaxPoolEncoder::init_parameters(ad::ParameterStore& store,
                                              Rng& rng) const {
  auto weight = [&](std::size_t fan_in, std::size_t fan_out, double gain) {
    ad::Tensor w = ad::Tensor::zeros({fan_in, fan_out});
    const double sd = std::sqrt(gain / static_cast<double>(fan_in));
    for (double& v : w.values()) v = sd * rng.normal();
    return w;
  };
  const std::size_t h = config_.hidden;
  store.add("point.mlp1.w", weight(3, h, 2.0));
  store.add("point.mlp1.b", ad::Tensor::zeros({h}), true);
  store.add("point.mlp2.w", weight(h, h, 2.0));
  store.add("point.mlp2.b", ad::Tensor::zeros({h}), true);
  store.add("point.head.w", weight(h, config_.dim, 1.0));
  store.add("point.head.b", ad::Tensor::zeros({config_.dim}), true);
}

ad::Var SharedMlpMaxPoolEncoder::encode(
    ad::Tape& tape, const ad::ParameterStore& params,
    std::span<const dataset::PointCloud* const> clouds) const {
  if (clouds.empty()) throw InputError("point encoder: empty batch");
  std::vector<std::size_t> sizes;
  std::vector<double> coords;
  for (const dataset::PointCloud* c : clouds) {
    if (c->empty()) throw InputError("point encoder: empty point cloud");
    sizes.push_back(c->size());
    for (const dataset::Point3& p : c->points) {
      coords.insert(coords.end(), p.begin(), p.end());
    }
  }
  const std::size_t rows = coords.size() / 3;
  ad::Var x = tape.constant(ad::Tensor({rows, 3}, std::move(coords)));
  ad::Var h1 = ad::relu(ad::add_bias(ad::matmul(x, params.bind(tape, "point.mlp1.w")),
                                     params.bind(tape, "point.mlp1.b")));
  ad::Var h2 = ad::relu(ad::add_bias(ad::matmul(h1, params.bind(tape, "point.mlp2.w")),
                                     params.bind(tape, "point.mlp2.b")));
  ad::Var pooled = ad::segment_max(h2, sizes);
  ad::Var head = ad::add_bias(ad::matmul(pooled, params.bind(tape, "point.head.w")),
                              params.bind(tape, "point.head.b"));
  return ad::l2_normalize(head);
}

FeatureVec encode_point_cloud(const dataset::PointCloud& cloud,
                              const PointBackbone& backbone,
                              const ad::ParameterStore& params) {
  ad::Tape tape;
  const dataset::PointCloud* one[] = {&cloud};
  ad::Var out = backbone.encode(tape, params, one);
  return FeatureVec{out.value().data(), true};
}

}  // namespace jm3d::encoders
