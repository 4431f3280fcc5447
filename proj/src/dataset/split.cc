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

#include "jm3d/dataset/split.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "jm3d/common/errors.h"
#include "jm3d/common/random.h"

namespace jm3d::dataset {

Split split_holdout(const Dataset& dataset, const CategoryTree& tree,
                    double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw ConfigError("holdout fraction must be in [0, 1)");
  }
  std::map<std::size_t, std::vector<std::size_t>> by_leaf;
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
    by_leaf[resolve_label(dataset.samples[i], tree).sub].push_back(i);
  }
  Rng rng(seed);
  Split split;
  for (auto& [leaf, members] : by_leaf) {
    rng.shuffle(std::span<std::size_t>(members));
    const auto held = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(members.size()) + 0.5));
    split.test.insert(split.test.end(), members.begin(),
                      members.begin() + static_cast<std::ptrdiff_t>(held));
    split.train.insert(split.train.end(),
                       members.begin() + static_cast<std::ptrdiff_t>(held),
                       members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace jm3d::dataset
