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

#include "jm3d/alignment/jma.h"

#include <algorithm>
#include <numeric>

#include "jm3d/autodiff/ops.h"
#include "jm3d/common/errors.h"

namespace jm3d::alignment {
namespace ad = autodiff;
namespace {

std::vector<std::size_t> canonical_order(const ad::Tensor& views) {
  std::vector<std::size_t> order(views.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = views.row(a);
    const auto rb = views.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });
  return order;
}

void check_shapes(const ad::Tensor& views, const ad::Tensor& text) {
  if (views.rank() != 2) {
    throw DimensionError("jma_fuse: views must be [V x D], got " +
                         ad::shape_string(views.shape()));
  }
  if (text.size() != views.cols() || text.rank() > 2 ||
      (text.rank() == 2 && text.rows() != 1)) {
    throw DimensionError("jma_fuse: text " + ad::shape_string(text.shape()) +
                         " does not match views " + ad::shape_string(views.shape()));
  }
}

}  // namespace

ad::Var jma_fuse(ad::Var views, ad::Var text) {
  if (views.value().rank() == 2 && views.value().rows() == 0) {
    throw InputError("jma_fuse: no views");
  }
  check_shapes(views.value(), text.value());
  const std::size_t d = views.value().cols();
  const auto order = canonical_order(views.value());
  ad::Var sorted = ad::gather_rows(views, order);
  ad::Var key = ad::reshape(text, {d, 1});
  ad::Var scores = ad::matmul(sorted, key);           // V x 1
  ad::Var weights = ad::softmax(scores, 0);           // V x 1
  return ad::matmul(ad::transpose(weights), sorted);  // 1 x D
}

ad::Var jma_fuse_batch(ad::Var views, ad::Var text, std::size_t views_per_sample) {
  const ad::Tensor& tv = text.value();
  if (views_per_sample == 0) throw InputError("jma_fuse: no views");
  if (tv.rank() != 2 || views.value().rank() != 2 ||
      views.value().rows() != tv.rows() * views_per_sample) {
    throw DimensionError("jma_fuse_batch: views " +
                         ad::shape_string(views.shape()) + " vs text " +
                         ad::shape_string(text.shape()) + " with V=" +
                         std::to_string(views_per_sample));
  }
  std::vector<ad::Var> fused;
  fused.reserve(tv.rows());
  for (std::size_t i = 0; i < tv.rows(); ++i) {
    fused.push_back(jma_fuse(ad::slice_rows(views, i * views_per_sample,
                                            views_per_sample),
                             ad::slice_rows(text, i, 1)));
  }
  return ad::concat_rows(fused);
}

JmaResult jma_fuse_values(const ad::Tensor& views, std::span<const double> text) {
  ad::Tape tape;
  ad::Var v = tape.constant(views);
  ad::Var t = tape.constant(ad::Tensor::vector({text.begin(), text.end()}));
  if (views.rank() == 2 && views.rows() == 0) throw InputError("jma_fuse: no views");
  check_shapes(views, t.value());
  const auto order = canonical_order(views);
  ad::Var out = jma_fuse(v, t);
  // Recompute the weights in sorted order and scatter them back.
  ad::Var sorted = ad::gather_rows(v, order);
  ad::Var w = ad::softmax(ad::matmul(sorted, ad::reshape(t, {views.cols(), 1})), 0);
  JmaResult r;
  r.weights.assign(views.rows(), 0.0);
  for (std::size_t k = 0; k < order.size(); ++k) r.weights[order[k]] = w.value()[k];
  r.output = out.value().data();
  return r;
}

}  // namespace jm3d::alignment
