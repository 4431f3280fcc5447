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

#ifndef JM3D_AUTODIFF_KERNELS_H_
#define JM3D_AUTODIFF_KERNELS_H_

#include <cstddef>

#include "jm3d/autodiff/tensor.h"

// Untracked numeric kernels. The differentiable ops in ops.h call these for
// their forward pass; the frozen branch (view embedding, eval-time encoding)
// calls them directly without a tape.
namespace jm3d::autodiff::kernels {

inline constexpr double kLayerNormEps = 1e-5;
inline constexpr double kNormEps = 1e-12;

// [M x K] * [K x N]. Throws DimensionError naming both shapes.
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);

// Max-subtracted softmax along `axis`.
Tensor softmax(const Tensor& x, std::size_t axis);
Tensor log_softmax(const Tensor& x, std::size_t axis);

// Per-row (last axis) (x - mean) / (std + eps), population std, no affine.
Tensor layer_norm(const Tensor& x, double eps = kLayerNormEps);

// Per-row (last axis) x / max(||x||_2, eps).
Tensor l2_normalize(const Tensor& x, double eps = kNormEps);

// Splits a tensor into (outer, axis extent, inner) strides for `axis`.
struct AxisLayout {
  std::size_t outer;
  std::size_t extent;
  std::size_t inner;
};
AxisLayout axis_layout(const Shape& shape, std::size_t axis);

}  // namespace jm3d::autodiff::kernels

#endif  // JM3D_AUTODIFF_KERNELS_H_
