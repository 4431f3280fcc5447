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

#include "jm3d/alignment/losses.h"

#include <cmath>
#include <string>

#include "jm3d/autodiff/ops.h"
#include "jm3d/common/errors.h"

namespace jm3d::alignment {
namespace ad = autodiff;

ad::Var info_nce(ad::Var a, ad::Var b, ad::Var inv_tau, NceMode mode) {
  const ad::Tensor& av = a.value();
  const ad::Tensor& bv = b.value();
  if (av.rank() != 2 || av.shape() != bv.shape()) {
    throw DimensionError("info_nce: shapes " + ad::shape_string(av.shape()) +
                         " and " + ad::shape_string(bv.shape()) + " differ");
  }
  const std::size_t n = av.rows();
  if (n < 2) throw ContractError("info_nce: need at least 2 rows for negatives");
  ad::Var logits = ad::mul_scalar(ad::matmul(a, ad::transpose(b)), inv_tau);
  const double k = -1.0 / (2.0 * static_cast<double>(n));
  ad::Var rows = ad::sum(ad::diag(ad::log_softmax(logits, 1)));
  if (mode == NceMode::kRowOnly) return ad::scale(rows, k);
  ad::Var cols = ad::sum(ad::diag(ad::log_softmax(logits, 0)));
  return ad::scale(ad::add(rows, cols), k);
}

ad::Var info_nce(ad::Var a, ad::Var b, double tau, NceMode mode) {
  if (!(tau > 0.0)) throw ContractError("info_nce: temperature must be positive");
  return info_nce(a, b, a.tape().constant(ad::Tensor::scalar(1.0 / tau)), mode);
}

LossWeights::LossWeights(double point_joint, double point_text, double text_joint)
    : w_{point_joint, point_text, text_joint} {
  bool any = false;
  for (double w : w_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ConfigError("loss weights must be finite and nonnegative");
    }
    any = any || w > 0.0;
  }
  if (!any) throw ConfigError("loss weights: at least one must be positive");
}

ad::Var contrastive_total(ad::Var point, ad::Var joint, ad::Var text,
                          const LossWeights& weights, ad::Var inv_tau,
                          NceMode mode) {
  if (point.shape() != joint.shape() || point.shape() != text.shape()) {
    throw DimensionError("contrastive_total: shapes " +
                         ad::shape_string(point.shape()) + ", " +
                         ad::shape_string(joint.shape()) + ", " +
                         ad::shape_string(text.shape()));
  }
  struct Term {
    double w;
    ad::Var a, b;
  };
  const Term terms[] = {{weights.point_joint(), point, joint},
                        {weights.point_text(), point, text},
                        {weights.text_joint(), text, joint}};
  ad::Var total;
  bool have = false;
  for (const Term& t : terms) {
    if (t.w == 0.0) continue;
    ad::Var term = info_nce(t.a, t.b, inv_tau, mode);
    if (t.w != 1.0) term = ad::scale(term, t.w);
    total = have ? ad::add(total, term) : term;
    have = true;
  }
  return total;
}

ad::Var parent_class_loss(ad::Var logits, std::span<const std::size_t> parents) {
  const ad::Tensor& lv = logits.value();
  if (lv.rank() != 2 || parents.size() != lv.rows()) {
    throw DimensionError("parent_class_loss: " + std::to_string(parents.size()) +
                         " labels for logits " + ad::shape_string(lv.shape()));
  }
  for (std::size_t p : parents) {
    if (p >= lv.cols()) {
      throw LabelError("parent_class_loss: parent index " + std::to_string(p) +
                       " out of range for " + std::to_string(lv.cols()) +
                       " parents");
    }
  }
  return ad::scale(ad::mean(ad::pick(ad::log_softmax(logits, 1), parents)), -1.0);
}

LossBreakdown total_loss(ad::Tape& tape, const EncodedBatch& batch,
                         const AlignmentHeads& heads, const ad::ParameterStore& store,
                         const LossOptions& options) {
  ad::Var point = batch.point;
  ad::Var joint = batch.joint;
  ad::Var text = batch.text;
  if (options.normalize) {
    point = ad::l2_normalize(point);
    joint = ad::l2_normalize(joint);
    text = ad::l2_normalize(text);
  }
  ad::Var inv_tau = heads.inverse_temperature(tape, store);
  LossBreakdown out;
  out.total = contrastive_total(point, joint, text, options.weights, inv_tau,
                                options.mode);
  out.contrastive = out.total.value()[0];
  if (options.parent_loss) {
    ad::Var parent =
        parent_class_loss(heads.parent_logits(tape, store, batch.point), batch.parents);
    out.parent = parent.value()[0];
    out.total = ad::add(out.total, parent);
  }
  return out;
}

}  // namespace jm3d::alignment
