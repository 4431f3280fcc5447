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

#include "jm3d/encoders/features.h"

#include <algorithm>
#include <cmath>

#include "jm3d/autodiff/kernels.h"
#include "jm3d/common/errors.h"

namespace jm3d::encoders {

FeatureVec normalized(FeatureVec v) {
  double sq = 0.0;
  for (double x : v.values) sq += x * x;
  const double denom = std::max(std::sqrt(sq), autodiff::kernels::kNormEps);
  for (double& x : v.values) x /= denom;
  v.unit_norm = true;
  return v;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = std::max(std::sqrt(dot(a, a)), autodiff::kernels::kNormEps);
  const double nb = std::max(std::sqrt(dot(b, b)), autodiff::kernels::kNormEps);
  return dot(a, b) / (na * nb);
}

FeatureBatch stack(std::span<const FeatureVec> rows) {
  if (rows.empty()) throw DimensionError("stack: no rows");
  const std::size_t d = rows[0].dim();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  bool unit = true;
  for (const FeatureVec& r : rows) {
    if (r.dim() != d) {
      throw DimensionError("stack: row of width " + std::to_string(r.dim()) +
                           " in a batch of width " + std::to_string(d));
    }
    flat.insert(flat.end(), r.values.begin(), r.values.end());
    unit = unit && r.unit_norm;
  }
  return FeatureBatch{autodiff::Tensor({rows.size(), d}, std::move(flat)), unit};
}

}  // namespace jm3d::encoders
