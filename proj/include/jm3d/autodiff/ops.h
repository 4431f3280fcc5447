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

#ifndef JM3D_AUTODIFF_OPS_H_
#define JM3D_AUTODIFF_OPS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "jm3d/autodiff/tape.h"

// Differentiable ops. Every op records onto the tape of its first input and
// throws DimensionError on shape mismatches, naming the offending shapes.
namespace jm3d::autodiff {

Var matmul(Var a, Var b);
Var transpose(Var a);

Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double factor);
// a * s, where s is a single-element tensor.
Var mul_scalar(Var a, Var s);
// [M x N] + [N] broadcast over rows.
Var add_bias(Var a, Var bias);

Var exp(Var a);
Var log(Var a);
Var relu(Var a);

Var sum(Var a);
Var mean(Var a);

Var softmax(Var x, std::size_t axis);
Var log_softmax(Var x, std::size_t axis);
Var layer_norm(Var x);
Var l2_normalize(Var x);

// Max over consecutive row groups: rows [0, sizes[0]) form group 0, the next
// sizes[1] rows group 1, and so on. Output is [groups x cols]. Ties resolve to
// the first row attaining the max.
Var segment_max(Var x, std::span<const std::size_t> sizes);

Var reshape(Var x, Shape shape);
Var slice_rows(Var x, std::size_t begin, std::size_t count);
Var concat_rows(std::span<const Var> parts);
Var gather_rows(Var x, std::span<const std::size_t> rows);

// out[i] = x[i, index[i]] for a [N x K] input.
Var pick(Var x, std::span<const std::size_t> index);
// Diagonal of a square matrix.
Var diag(Var x);

}  // namespace jm3d::autodiff

#endif  // JM3D_AUTODIFF_OPS_H_
