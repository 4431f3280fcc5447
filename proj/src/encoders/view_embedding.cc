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

#include "jm3d/encoders/view_embedding.h"

#include <cmath>
#include <numbers>

#include "jm3d/autodiff/kernels.h"
#include "jm3d/common/errors.h"
#include "jm3d/dataset/triplet.h"

namespace jm3d::encoders {
namespace {

autodiff::Tensor sinusoid(std::size_t dim, double phase, double row_norm) {
  autodiff::Tensor t = autodiff::Tensor::zeros(
      {static_cast<std::size_t>(dataset::kAngleBuckets), dim});
  for (std::size_t b = 0; b < t.rows(); ++b) {
    auto row = t.row(b);
    double sq = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double pair = static_cast<double>(j - j % 2);
      const double freq = std::pow(10000.0, -pair / static_cast<double>(dim));
      const double arg = static_cast<double>(b) * freq + phase;
      row[j] = j % 2 == 0 ? std::sin(arg) : std::cos(arg);
      sq += row[j] * row[j];
    }
    const double s = row_norm / std::sqrt(sq);
    for (double& v : row) v *= s;
  }
  return t;
}

}  // namespace

ViewEmbeddingTables make_sinusoidal_tables(std::size_t dim, double row_norm) {
  if (dim == 0) throw ConfigError("embedding tables need dim >= 1");
  return {sinusoid(dim, 0.0, row_norm),
          sinusoid(dim, std::numbers::pi / 4.0, row_norm)};
}

ViewEmbeddingTables make_zero_tables(std::size_t dim) {
  const std::size_t b = dataset::kAngleBuckets;
  return {autodiff::Tensor::zeros({b, dim}), autodiff::Tensor::zeros({b, dim})};
}

FeatureVec embed_view(const FeatureVec& feature, int angle_deg,
                      const ViewEmbeddingTables& tables) {
  const std::size_t bucket = dataset::angle_bucket(angle_deg);
  if (feature.dim() != tables.degree.cols()) {
    throw DimensionError("embed_view: feature width " +
                         std::to_string(feature.dim()) + " vs tables width " +
                         std::to_string(tables.degree.cols()));
  }
  std::vector<double> sum = feature.values;
  const auto deg = tables.degree.row(bucket);
  const auto dep = tables.depth.row(bucket);
  for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += deg[j] + dep[j];
  const std::size_t d = sum.size();
  const auto out = autodiff::kernels::layer_norm(autodiff::Tensor({1, d}, std::move(sum)));
  return FeatureVec{out.data(), false};
}

}  // namespace jm3d::encoders
