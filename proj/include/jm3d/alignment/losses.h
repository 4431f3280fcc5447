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

#ifndef JM3D_ALIGNMENT_LOSSES_H_
#define JM3D_ALIGNMENT_LOSSES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "jm3d/alignment/heads.h"
#include "jm3d/autodiff/parameters.h"
#include "jm3d/autodiff/tape.h"

namespace jm3d::alignment {

enum class NceMode {
  kSymmetric,    // half of the row + column cross entropies
  kRowOnly,      // half of the row cross entropy
};

// Contrastive loss between matched rows of a and b (both [N x D], N >= 2):
//   logits = a b^T * inv_tau
//   symmetric: -(1/2N) sum_i [log softmax_row(logits)_ii + log softmax_col(logits)_ii]
//   row only:  -(1/2N) sum_i  log softmax_row(logits)_ii
// inv_tau is a [1] node.
autodiff::Var info_nce(autodiff::Var a, autodiff::Var b, autodiff::Var inv_tau,
                       NceMode mode = NceMode::kSymmetric);
autodiff::Var info_nce(autodiff::Var a, autodiff::Var b, double tau,
                       NceMode mode = NceMode::kSymmetric);

// Nonnegative weights for the point-joint, point-text and text-joint terms.
class LossWeights {
 public:
  // Throws ConfigError for a negative, non-finite or all-zero triple.
  LossWeights(double point_joint, double point_text, double text_joint);

  double point_joint() const { return w_[0]; }
  double point_text() const { return w_[1]; }
  double text_joint() const { return w_[2]; }

 private:
  double w_[3];
};

// l1 * L(hC, hJ) + l2 * L(hC, hTs) + l3 * L(hTs, hJ). Zero-weight terms are
// skipped entirely.
autodiff::Var contrastive_total(autodiff::Var point, autodiff::Var joint,
                                autodiff::Var text, const LossWeights& weights,
                                autodiff::Var inv_tau,
                                NceMode mode = NceMode::kSymmetric);

// Mean negative log-likelihood of the true parent under logits [N x P].
autodiff::Var parent_class_loss(autodiff::Var logits,
                                std::span<const std::size_t> parents);

// One encoded batch, rows aligned by sample.
struct EncodedBatch {
  autodiff::Var point;  // hC  [N x D]
  autodiff::Var joint;  // hJ  [N x D]
  autodiff::Var text;   // hTs [N x D]
  std::vector<std::size_t> parents;
};

struct LossOptions {
  LossWeights weights{1.0, 1.0, 1.0};
  NceMode mode = NceMode::kSymmetric;
  bool normalize = true;     // L2-normalize all three feature sets first
  bool parent_loss = true;   // off when the category hierarchy is disabled
};

struct LossBreakdown {
  autodiff::Var total;
  double contrastive = 0.0;
  double parent = 0.0;
};

// contrastive_total + parent_class_loss(theta(hC)).
LossBreakdown total_loss(autodiff::Tape& tape, const EncodedBatch& batch,
                         const AlignmentHeads& heads,
                         const autodiff::ParameterStore& store,
                         const LossOptions& options);

}  // namespace jm3d::alignment

#endif  // JM3D_ALIGNMENT_LOSSES_H_
