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

#ifndef JM3D_TRAINING_MODEL_H_
#define JM3D_TRAINING_MODEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "jm3d/alignment/heads.h"
#include "jm3d/autodiff/parameters.h"
#include "jm3d/common/random.h"
#include "jm3d/dataset/point_cloud.h"
#include "jm3d/encoders/features.h"
#include "jm3d/encoders/frozen.h"
#include "jm3d/encoders/point_encoder.h"
#include "jm3d/encoders/view_embedding.h"
#include "jm3d/training/config.h"

namespace jm3d::training {

inline constexpr std::string_view kPromptTemplate = "a point cloud of [CLASS]";

// "a point cloud of [CLASS]" with the class name substituted.
std::string make_prompt(std::string_view class_name,
                        std::string_view pattern = kPromptTemplate);

// Frozen encoders, fixed view tables and the trainable parameters
// (point backbone + alignment heads).
class Model {
 public:
  // Fresh model; parameters initialized from `init_seed`.
  Model(const TrainConfig& config, std::size_t dim, std::size_t parents,
        std::uint64_t init_seed);
  // Model around existing parameters (e.g. from a checkpoint). Throws
  // ValidationError when the parameters do not fit the configuration.
  Model(const TrainConfig& config, std::size_t dim, std::size_t parents,
        autodiff::ParameterStore params);

  const TrainConfig& config() const { return config_; }
  std::size_t dim() const { return dim_; }
  std::size_t parents() const { return parents_; }

  const encoders::SharedMlpMaxPoolEncoder& backbone() const { return backbone_; }
  const alignment::AlignmentHeads& heads() const { return heads_; }
  const encoders::FrozenTextEncoder& text_encoder() const { return text_; }
  const encoders::FrozenImageEncoder& image_encoder() const { return image_; }
  const encoders::ViewEmbeddingTables& tables() const { return tables_; }

  const autodiff::ParameterStore& params() const { return params_; }
  autodiff::ParameterStore& mutable_params() { return params_; }

  encoders::FeatureVec encode_cloud(const dataset::PointCloud& cloud) const;
  encoders::FeatureVec encode_text(std::string_view text) const;

 private:
  void check_parameters() const;

  TrainConfig config_;
  std::size_t dim_;
  std::size_t parents_;
  encoders::SharedMlpMaxPoolEncoder backbone_;
  alignment::AlignmentHeads heads_;
  encoders::FrozenTextEncoder text_;
  encoders::FrozenImageEncoder image_;
  encoders::ViewEmbeddingTables tables_;
  autodiff::ParameterStore params_;
};

}  // namespace jm3d::training

#endif  // JM3D_TRAINING_MODEL_H_
