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

#include "jm3d/autodiff/kernels.h"

#include <algorithm>
#include <cmath>

#include "jm3d/common/errors.h"

namespace jm3d::autodiff::kernels {

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0)) {
    throw DimensionError("matmul: incompatible shapes " +
                         shape_string(a.shape()) + " and " +
                         shape_string(b.shape()));
  }
  const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  Tensor out = Tensor::zeros({m, n});
  const double* pa = a.values().data();
  const double* pb = b.values().data();
  double* po = out.values().data();
  for (std::size_t i = 0; i < m; ++i) {
    double* orow = po + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = pa[i * k + p];
      const double* brow = pb + p * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += av * brow[j];
    }
  }
  return out;
}

Tensor transpose(const Tensor& a) {
  if (a.rank() != 2) {
    throw DimensionError("transpose: expected rank 2, got " +
                         shape_string(a.shape()));
  }
  const std::size_t m = a.dim(0), n = a.dim(1);
  Tensor out = Tensor::zeros({n, m});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at(j, i) = a.at(i, j);
  }
  return out;
}

AxisLayout axis_layout(const Shape& shape, std::size_t axis) {
  if (axis >= shape.size()) {
    throw ContractError("axis " + std::to_string(axis) +
                        " out of range for shape " + shape_string(shape));
  }
  AxisLayout l{1, shape[axis], 1};
  for (std::size_t i = 0; i < axis; ++i) l.outer *= shape[i];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) l.inner *= shape[i];
  return l;
}

namespace {

template <bool kLog>
Tensor softmax_impl(const Tensor& x, std::size_t axis) {
  const AxisLayout l = axis_layout(x.shape(), axis);
  Tensor out = Tensor::zeros(x.shape());
  const auto in = x.values();
  auto o = out.values();
  for (std::size_t a = 0; a < l.outer; ++a) {
    for (std::size_t c = 0; c < l.inner; ++c) {
      const std::size_t base = a * l.extent * l.inner + c;
      double mx = in[base];
      for (std::size_t k = 1; k < l.extent; ++k) {
        mx = std::max(mx, in[base + k * l.inner]);
      }
      double total = 0.0;
      for (std::size_t k = 0; k < l.extent; ++k) {
        total += std::exp(in[base + k * l.inner] - mx);
      }
      if constexpr (kLog) {
        const double lse = std::log(total);
        for (std::size_t k = 0; k < l.extent; ++k) {
          o[base + k * l.inner] = in[base + k * l.inner] - mx - lse;
        }
      } else {
        for (std::size_t k = 0; k < l.extent; ++k) {
          o[base + k * l.inner] = std::exp(in[base + k * l.inner] - mx) / total;
        }
      }
    }
  }
  return out;
}

}  // namespace

Tensor softmax(const Tensor& x, std::size_t axis) {
  return softmax_impl<false>(x, axis);
}

Tensor log_softmax(const Tensor& x, std::size_t axis) {
  return softmax_impl<true>(x, axis);
}

Tensor layer_norm(const Tensor& x, double eps) {
  Tensor out = Tensor::zeros(x.shape());
  const std::size_t d = x.cols();
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto in = x.row(r);
    double mean = 0.0;
    for (double v : in) mean += v;
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (double v : in) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d);
    const double denom = std::sqrt(var) + eps;
    auto o = out.row(r);
    for (std::size_t j = 0; j < d; ++j) o[j] = (in[j] - mean) / denom;
  }
  return out;
}

Tensor l2_normalize(const Tensor& x, double eps) {
  Tensor out = Tensor::zeros(x.shape());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto in = x.row(r);
    double sq = 0.0;
    for (double v : in) sq += v * v;
    const double denom = std::max(std::sqrt(sq), eps);
    auto o = out.row(r);
    for (std::size_t j = 0; j < in.size(); ++j) o[j] = in[j] / denom;
  }
  return out;
}

}  // namespace jm3d::autodiff::kernels
