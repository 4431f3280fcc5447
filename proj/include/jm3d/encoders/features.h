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

#ifndef JM3D_ENCODERS_FEATURES_H_
#define JM3D_ENCODERS_FEATURES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "jm3d/autodiff/tensor.h"

namespace jm3d::encoders {

// One representation vector from any modality.
struct FeatureVec {
  std::vector<double> values;
  bool unit_norm = false;

  std::size_t dim() const { return values.size(); }
  friend bool operator==(const FeatureVec&, const FeatureVec&) = default;
};

// N x D rows, all from one modality.
struct FeatureBatch {
  autodiff::Tensor rows;
  bool unit_norm = false;

  std::size_t size() const { return rows.rows(); }
  std::size_t dim() const { return rows.cols(); }
};

FeatureVec normalized(FeatureVec v);
double dot(std::span<const double> a, std::span<const double> b);
// Cosine similarity with the 1e-12 norm guard; 0 for a zero vector.
double cosine(std::span<const double> a, std::span<const double> b);

// Stacks equal-width vectors into a batch; DimensionError on ragged input.
FeatureBatch stack(std::span<const FeatureVec> rows);

}  // namespace jm3d::encoders

#endif  // JM3D_ENCODERS_FEATURES_H_
