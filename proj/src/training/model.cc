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

#include "jm3d/training/model.h"

#include "jm3d/common/errors.h"

namespace jm3d::training {
namespace ad = autodiff;
namespace {

encoders::FrozenEncoderSpec frozen_spec(const TrainConfig& c, std::size_t dim) {
  return {c.encoder_seed, c.vocab, dim};
}

alignment::HeadsConfig heads_config(const TrainConfig& c, std::size_t dim,
                                    std::size_t parents) {
  return {dim, c.head_hidden, parents, c.temperature, c.learn_temperature};
}

encoders::ViewEmbeddingTables tables_for(const TrainConfig& c, std::size_t dim) {
  if (!c.embeddings) return encoders::make_zero_tables(dim);
  return encoders::make_sinusoidal_tables(dim, c.embed_scale);
}

}  // namespace

std::string make_prompt(std::string_view class_name, std::string_view pattern) {
  static constexpr std::string_view kSlot = "[CLASS]";
  const auto at = pattern.find(kSlot);
  if (at == std::string_view::npos) {
    throw ConfigError("prompt template lacks [CLASS]: " + std::string(pattern));
  }
  std::string out(pattern.substr(0, at));
  out += class_name;
  out += pattern.substr(at + kSlot.size());
  return out;
}

Model::Model(const TrainConfig& config, std::size_t dim, std::size_t parents,
             std::uint64_t init_seed)
    : config_(config),
      dim_(dim),
      parents_(parents),
      backbone_({config.point_hidden, dim}),
      heads_(heads_config(config, dim, parents)),
      text_(frozen_spec(config, dim)),
      image_(frozen_spec(config, dim)),
      tables_(tables_for(config, dim)) {
  Rng rng(init_seed);
  backbone_.init_parameters(params_, rng);
  heads_.init_parameters(params_, rng);
}

Model::Model(const TrainConfig& config, std::size_t dim, std::size_t parents,
             ad::ParameterStore params)
    : config_(config),
      dim_(dim),
      parents_(parents),
      backbone_({config.point_hidden, dim}),
      heads_(heads_config(config, dim, parents)),
      text_(frozen_spec(config, dim)),
      image_(frozen_spec(config, dim)),
      tables_(tables_for(config, dim)),
      params_(std::move(params)) {
  check_parameters();
}

void Model::check_parameters() const {
  Model fresh(config_, dim_, parents_, 0);
  const auto want = fresh.params_.names();
  if (params_.names() != want) {
    throw ValidationError("model parameters do not match the configuration");
  }
  for (const auto& name : want) {
    if (params_.value(name).shape() != fresh.params_.value(name).shape()) {
      throw ValidationError("parameter " + name + " has shape " +
                            ad::shape_string(params_.value(name).shape()) +
                            ", expected " +
                            ad::shape_string(fresh.params_.value(name).shape()));
    }
  }
}

encoders::FeatureVec Model::encode_cloud(const dataset::PointCloud& cloud) const {
  return encoders::encode_point_cloud(cloud, backbone_, params_);
}

encoders::FeatureVec Model::encode_text(std::string_view text) const {
  return text_.encode(text);
}

}  // namespace jm3d::training
