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

#ifndef JM3D_DATASET_POINT_CLOUD_H_
#define JM3D_DATASET_POINT_CLOUD_H_

#include <array>
#include <cstddef>
#include <vector>

#include "jm3d/common/random.h"

namespace jm3d::dataset {

using Point3 = std::array<double, 3>;

struct PointCloud {
  std::vector<Point3> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

// Translates the centroid to the origin and scales the farthest point to
// radius 1. A cloud whose points all coincide is only centered.
PointCloud normalize(PointCloud cloud);

// Uniform random subset of `n` points (in draw order), then normalized.
// Throws InputError when the cloud has fewer than `n` points or n == 0.
PointCloud downsample_points(const PointCloud& cloud, std::size_t n, Rng& rng);

}  // namespace jm3d::dataset

#endif  // JM3D_DATASET_POINT_CLOUD_H_
