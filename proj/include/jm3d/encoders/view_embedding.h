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

#ifndef JM3D_ENCODERS_VIEW_EMBEDDING_H_
#define JM3D_ENCODERS_VIEW_EMBEDDING_H_

#include <cstddef>

#include "jm3d/autodiff/tensor.h"
#include "jm3d/encoders/features.h"

namespace jm3d::encoders {

inline constexpr double kDefaultEmbeddingNorm = 0.25;

// Fixed angle ("degree") and depth tables, one row per 12-degree bucket.
struct ViewEmbeddingTables {
  autodiff::Tensor degree;  // 30 x D
  autodiff::Tensor depth;   // 30 x D
};

// Transformer-style sinusoids over the bucket index:
//   degree[b][2i] = sin(b / 10000^(2i/D)), degree[b][2i+1] = cos(...)
// depth uses the same frequencies shifted by a pi/4 phase. Every row is
// scaled to L2 norm `row_norm`, keeping the angle signal a perturbation of a
// unit-norm frozen feature.
ViewEmbeddingTables make_sinusoidal_tables(std::size_t dim,
                                           double row_norm = kDefaultEmbeddingNorm);
ViewEmbeddingTables make_zero_tables(std::size_t dim);

// layer_norm(feature + degree[bucket] + depth[bucket]). Invalid angles throw
// through angle_bucket.
FeatureVec embed_view(const FeatureVec& feature, int angle_deg,
                      const ViewEmbeddingTables& tables);

}  // namespace jm3d::encoders

#endif  // JM3D_ENCODERS_VIEW_EMBEDDING_H_
