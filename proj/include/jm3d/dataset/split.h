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

#ifndef JM3D_DATASET_SPLIT_H_
#define JM3D_DATASET_SPLIT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jm3d/dataset/category_tree.h"
#include "jm3d/dataset/triplet.h"

namespace jm3d::dataset {

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Holds out round(fraction * n) samples of every resolved subcategory (n is
// that subcategory's sample count), chosen by a seeded shuffle. Both lists
// are returned in ascending sample order. fraction must lie in [0, 1).
Split split_holdout(const Dataset& dataset, const CategoryTree& tree,
                    double fraction, std::uint64_t seed);

}  // namespace jm3d::dataset

#endif  // JM3D_DATASET_SPLIT_H_
