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

#ifndef JM3D_ENCODERS_POINT_ENCODER_H_
#define JM3D_ENCODERS_POINT_ENCODER_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>

#include "jm3d/autodiff/parameters.h"
#include "jm3d/autodiff/tape.h"
#include "jm3d/common/random.h"
#include "jm3d/dataset/point_cloud.h"
#include "jm3d/encoders/features.h"

namespace jm3d::encoders {

// Trainable point-cloud backbone. Implementations own a parameter-name
// prefix in the store and must be symmetric in the point order.
class PointBackbone {
 public:
  virtual ~PointBackbone() = default;

  virtual std::string name() const = 0;
  virtual std::size_t output_dim() const = 0;

  // Adds freshly initialized parameters to `store`.
  virtual void init_parameters(autodiff::ParameterStore& store,
                               Rng& rng) const = 0;

  // Encodes a batch of clouds into a [B x D] node with unit-norm rows.
  // Throws InputError for an empty cloud or an empty batch.
  virtual autodiff::Var encode(autodiff::Tape& tape,
                               const autodiff::ParameterStore& params,
                               std::span<const dataset::PointCloud* const> clouds)
      const = 0;
};

struct PointEncoderConfig {
  std::size_t hidden = 32;
  std::size_t dim = 32;
};

// PointNet-style encoder: per-point shared MLP 3 -> h -> h (ReLU), max over
// points, linear head h -> D, L2 normalization.
class SharedMlpMaxPoolEncoder final : public PointBackbone {
 public:
  static constexpr const char* kPrefix = "point.";

  explicit SharedMlpMaxPoolEncoder(PointEncoderConfig config);

  std::string name() const override { return "shared-mlp-maxpool"; }
  std::size_t output_dim() const override { return config_.dim; }
  const PointEncoderConfig& config() const { return config_; }

  void init_parameters(autodiff::ParameterStore& store, Rng& rng) const override;
  autodiff::Var encode(autodiff::Tape& tape,
                       const autodiff::ParameterStore& params,
                       std::span<const dataset::PointCloud* const> clouds)
      const override;

 private:
  PointEncoderConfig config_;
};

// Untracked single-cloud encoding, for evaluation and retrieval.
FeatureVec encode_point_cloud(const dataset::PointCloud& cloud,
                              const PointBackbone& backbone,
                              const autodiff::ParameterStore& params);

}  // namespace jm3d::encoders

#endif  // JM3D_ENCODERS_POINT_ENCODER_H_
