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

#ifndef JM3D_TRAINING_BATCHING_H_
#define JM3D_TRAINING_BATCHING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "jm3d/alignment/losses.h"
#include "jm3d/autodiff/tape.h"
#include "jm3d/autodiff/tensor.h"
#include "jm3d/common/random.h"
#include "jm3d/dataset/category_tree.h"
#include "jm3d/dataset/triplet.h"
#include "jm3d/training/model.h"

namespace jm3d::training {

// A sample with its frozen features computed once up front.
struct PreparedSample {
  const dataset::PointCloud* cloud = nullptr;
  std::vector<int> angles;          // per view record
  autodiff::Tensor view_features;   // records x D, frozen image features
  std::size_t parent = 0;
  std::size_t leaf = 0;
};

struct TrainingData {
  std::vector<PreparedSample> samples;
  autodiff::Tensor leaf_text;    // leaves x D, subcategory prompts
  autodiff::Tensor parent_text;  // parents x D, parent prompts
};

// Encodes every view of the selected samples and every prompt of the tree
// with the model's frozen encoders. The dataset must outlive the result.
TrainingData prepare_training_data(const Model& model, const dataset::Dataset& data,
                                   const dataset::CategoryTree& tree,
                                   std::span<const std::size_t> indices);

// View positions for one sample: a window draw when CIS and the window
// constraint are on, otherwise distinct random records. One view when CIS is
// off.
std::vector<std::size_t> select_views(const PreparedSample& sample,
                                      const TrainConfig& config, Rng& rng);

// Builds the encoded batch for `positions` (indices into data.samples):
// point features through the trainable backbone, view embeddings, the
// contrastive text target (subcategory prompt, or parent prompt with the
// hierarchy off) and the joint feature (text-keyed fusion, or the mean of the
// views with fusion off).
// `params` stands in for the model's own parameters (gradient checks pass
// perturbed copies).
alignment::EncodedBatch build_batch(autodiff::Tape& tape, const Model& model,
                                    const autodiff::ParameterStore& params,
                                    const TrainingData& data,
                                    std::span<const std::size_t> positions, Rng& rng);

}  // namespace jm3d::training

#endif  // JM3D_TRAINING_BATCHING_H_
