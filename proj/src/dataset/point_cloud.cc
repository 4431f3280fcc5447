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

#include "jm3d/dataset/point_cloud.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "jm3d/common/errors.h"

namespace jm3d::dataset {

PointCloud normalize(PointCloud cloud) {
  if (cloud.empty()) return cloud;
  Point3 centroid{0.0, 0.0, 0.0};
  for (const Point3& p : cloud.points) {
    for (int k = 0; k < 3; ++k) centroid[k] += p[k];
  }
  for (double& c : centroid) c /= static_cast<double>(cloud.size());
  double radius = 0.0;
  for (Point3& p : cloud.points) {
    for (int k = 0; k < 3; ++k) p[k] -= centroid[k];
    radius = std::max(radius, std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]));
  }
  if (radius > 0.0) {
    for (Point3& p : cloud.points) {
      for (double& c : p) c /= radius;
    }
  }
  return cloud;
}

PointCloud downsample_points(const PointCloud& cloud, std::size_t n, Rng& rng) {
  if (n == 0 || cloud.size() < n) {
    throw InputError("downsample_points: cannot take " + std::to_string(n) +
                     " points from a cloud of " + std::to_string(cloud.size()));
  }
  std::vector<std::size_t> order(cloud.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first n slots end up a uniform n-subset.
  for (std::size_t i = 0; i < n; ++i) {
    std::swap(order[i], order[i + rng.index(order.size() - i)]);
  }
  PointCloud out;
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.points.push_back(cloud.points[order[i]]);
  return normalize(std::move(out));
}

}  // namespace jm3d::dataset
