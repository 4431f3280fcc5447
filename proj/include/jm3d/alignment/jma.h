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

#ifndef JM3D_ALIGNMENT_JMA_H_
#define JM3D_ALIGNMENT_JMA_H_

#include <span>
#include <vector>

#include "jm3d/autodiff/tape.h"
#include "jm3d/autodiff/tensor.h"

namespace jm3d::alignment {

// Text-keyed attention over the views of one sample:
//   w = softmax_v(<view_v, text>),  out = sum_v w_v * view_v
// views: [V x D], text: [D] or [1 x D]. Returns [1 x D].
//
// Views are visited in lexicographic order of their values, so the result
// is bit-identical under any permutation of the input rows.
autodiff::Var jma_fuse(autodiff::Var views, autodiff::Var text);

// Batched form: views holds N blocks of V rows, text is [N x D]. Returns
// [N x D].
autodiff::Var jma_fuse_batch(autodiff::Var views, autodiff::Var text,
                             std::size_t views_per_sample);

struct JmaResult {
  std::vector<double> weights;  // per input row, in input order
  std::vector<double> output;
};

// Untracked evaluation of jma_fuse that also reports the attention weights.
JmaResult jma_fuse_values(const autodiff::Tensor& views,
                          std::span<const double> text);

}  // namespace jm3d::alignment

#endif  // JM3D_ALIGNMENT_JMA_H_
