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

#include "jm3d/autodiff/ops.h"

#include <cmath>
#include <string>
#include <utility>

#include "jm3d/autodiff/kernels.h"
#include "jm3d/common/errors.h"

namespace jm3d::autodiff {
namespace {

void require_same_shape(const char* op, Var a, Var b) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " +
                         shape_string(a.shape()) + " vs " +
                         shape_string(b.shape()));
  }
}

void require_rank2(const char* op, Var a) {
  if (a.value().rank() != 2) {
    throw DimensionError(std::string(op) + ": expected a matrix, got " +
                         shape_string(a.shape()));
  }
}

// g += factor * src, elementwise.
void accumulate(Tensor* g, const Tensor& src, double factor = 1.0) {
  if (!g) return;
  auto dst = g->values();
  const auto s = src.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += factor * s[i];
}

}  // namespace

Var matmul(Var a, Var b) {
  Tensor out = kernels::matmul(a.value(), b.value());
  return a.tape().record(std::move(out), {a, b}, [](const BackwardContext& c) {
    const Tensor& av = *c.inputs[0];
    const Tensor& bv = *c.inputs[1];
    if (c.grad_inputs[0]) {
      accumulate(c.grad_inputs[0],
                 kernels::matmul(c.grad_output, kernels::transpose(bv)));
    }
    if (c.grad_inputs[1]) {
      accumulate(c.grad_inputs[1],
                 kernels::matmul(kernels::transpose(av), c.grad_output));
    }
  });
}

Var transpose(Var a) {
  require_rank2("transpose", a);
  return a.tape().record(kernels::transpose(a.value()), {a},
                         [](const BackwardContext& c) {
                           accumulate(c.grad_inputs[0],
                                      kernels::transpose(c.grad_output));
                         });
}

Var add(Var a, Var b) {
  require_same_shape("add", a, b);
  Tensor out = a.value();
  accumulate(&out, b.value());
  return a.tape().record(std::move(out), {a, b}, [](const BackwardContext& c) {
    accumulate(c.grad_inputs[0], c.grad_output);
    accumulate(c.grad_inputs[1], c.grad_output);
  });
}

Var sub(Var a, Var b) {
  require_same_shape("sub", a, b);
  Tensor out = a.value();
  accumulate(&out, b.value(), -1.0);
  return a.tape().record(std::move(out), {a, b}, [](const BackwardContext& c) {
    accumulate(c.grad_inputs[0], c.grad_output);
    accumulate(c.grad_inputs[1], c.grad_output, -1.0);
  });
}

Var mul(Var a, Var b) {
  require_same_shape("mul", a, b);
  Tensor out = a.value();
  const auto bv = b.value().values();
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] *= bv[i];
  return a.tape().record(std::move(out), {a, b}, [](const BackwardContext& c) {
    const auto g = c.grad_output.values();
    const auto x = c.inputs[0]->values();
    const auto y = c.inputs[1]->values();
    if (Tensor* ga = c.grad_inputs[0]) {
      auto d = ga->values();
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += g[i] * y[i];
    }
    if (Tensor* gb = c.grad_inputs[1]) {
      auto d = gb->values();
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += g[i] * x[i];
    }
  });
}

Var scale(Var a, double factor) {
  Tensor out = a.value();
  for (double& v : out.values()) v *= factor;
  return a.tape().record(std::move(out), {a},
                         [factor](const BackwardContext& c) {
                           accumulate(c.grad_inputs[0], c.grad_output, factor);
                         });
}

Var mul_scalar(Var a, Var s) {
  if (!s.value().is_scalar()) {
    throw DimensionError("mul_scalar: expected a scalar factor, got " +
                         shape_string(s.shape()));
  }
  const double k = s.value()[0];
  Tensor out = a.value();
  for (double& v : out.values()) v *= k;
  return a.tape().record(std::move(out), {a, s}, [](const BackwardContext& c) {
    const double k = (*c.inputs[1])[0];
    accumulate(c.grad_inputs[0], c.grad_output, k);
    if (Tensor* gs = c.grad_inputs[1]) {
      const auto g = c.grad_output.values();
      const auto x = c.inputs[0]->values();
      double total = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) total += g[i] * x[i];
      (*gs)[0] += total;
    }
  });
}

Var add_bias(Var a, Var bias) {
  require_rank2("add_bias", a);
  if (bias.value().size() != a.value().cols()) {
    throw DimensionError("add_bias: bias " + shape_string(bias.shape()) +
                         " does not match " + shape_string(a.shape()));
  }
  Tensor out = a.value();
  const auto b = bias.value().values();
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] += b[j];
  }
  return a.tape().record(std::move(out), {a, bias},
                         [](const BackwardContext& c) {
                           accumulate(c.grad_inputs[0], c.grad_output);
                           if (Tensor* gb = c.grad_inputs[1]) {
                             const Tensor& g = c.grad_output;
                             for (std::size_t r = 0; r < g.rows(); ++r) {
                               const auto row = g.row(r);
                               for (std::size_t j = 0; j < row.size(); ++j) {
                                 (*gb)[j] += row[j];
                               }
                             }
                           }
                         });
}

Var exp(Var a) {
  Tensor out = a.value();
  for (double& v : out.values()) v = std::exp(v);
  return a.tape().record(std::move(out), {a}, [](const BackwardContext& c) {
    if (Tensor* ga = c.grad_inputs[0]) {
      auto d = ga->values();
      const auto g = c.grad_output.values();
      const auto y = c.output.values();
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += g[i] * y[i];
    }
  });
}

Var log(Var a) {
  Tensor out = a.value();
  for (double& v : out.values()) v = std::log(v);
  return a.tape().record(std::move(out), {a}, [](const BackwardContext& c) {
    if (Tensor* ga = c.grad_inputs[0]) {
      auto d = ga->values();
      const auto g = c.grad_output.values();
      const auto x = c.inputs[0]->values();
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += g[i] / x[i];
    }
  });
}

Var relu(Var a) {
  Tensor out = a.value();
  for (double& v : out.values()) v = v > 0.0 ? v : 0.0;
  return a.tape().record(std::move(out), {a}, [](const BackwardContext& c) {
    if (Tensor* ga = c.grad_inputs[0]) {
      auto d = ga->values();
      const auto g = c.grad_output.values();
      const auto x = c.inputs[0]->values();
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (x[i] > 0.0) d[i] += g[i];
      }
    }
  });
}

Var sum(Var a) {
  double total = 0.0;
  for (double v : a.value().values()) total += v;
  return a.tape().record(Tensor::scalar(total), {a},
                         [](const BackwardContext& c) {
                           if (Tensor* ga = c.grad_inputs[0]) {
                             const double g = c.grad_output[0];
                             for (double& d : ga->values()) d += g;
                           }
                         });
}

Var mean(Var a) {
  return scale(sum(a), 1.0 / static_cast<double>(a.value().size()));
}

Var softmax(Var x, std::size_t axis) {
  Tensor out = kernels::softmax(x.value(), axis);
  return x.tape().record(
      std::move(out), {x}, [axis](const BackwardContext& c) {
        Tensor* gx = c.grad_inputs[0];
        if (!gx) return;
        const auto l = kernels::axis_layout(c.output.shape(), axis);
        const auto y = c.output.values();
        const auto g = c.grad_output.values();
        auto d = gx->values();
        for (std::size_t a = 0; a < l.outer; ++a) {
          for (std::size_t in = 0; in < l.inner; ++in) {
            const std::size_t base = a * l.extent * l.inner + in;
            double dot = 0.0;
            for (std::size_t k = 0; k < l.extent; ++k) {
              const std::size_t i = base + k * l.inner;
              dot += g[i] * y[i];
            }
            for (std::size_t k = 0; k < l.extent; ++k) {
              const std::size_t i = base + k * l.inner;
              d[i] += y[i] * (g[i] - dot);
            }
          }
        }
      });
}

Var log_softmax(Var x, std::size_t axis) {
  Tensor out = kernels::log_softmax(x.value(), axis);
  return x.tape().record(
      std::move(out), {x}, [axis](const BackwardContext& c) {
        Tensor* gx = c.grad_inputs[0];
        if (!gx) return;
        const auto l = kernels::axis_layout(c.output.shape(), axis);
        const auto y = c.output.values();
        const auto g = c.grad_output.values();
        auto d = gx->values();
        for (std::size_t a = 0; a < l.outer; ++a) {
          for (std::size_t in = 0; in < l.inner; ++in) {
            const std::size_t base = a * l.extent * l.inner + in;
            double gsum = 0.0;
            for (std::size_t k = 0; k < l.extent; ++k) {
              gsum += g[base + k * l.inner];
            }
            for (std::size_t k = 0; k < l.extent; ++k) {
              const std::size_t i = base + k * l.inner;
              d[i] += g[i] - std::exp(y[i]) * gsum;
            }
          }
        }
      });
}

Var layer_norm(Var x) {
  if (x.value().cols() < 2) {
    throw DimensionError("layer_norm: last axis must be >= 2, got " +
                         shape_string(x.shape()));
  }
  Tensor out = kernels::layer_norm(x.value());
  return x.tape().record(std::move(out), {x}, [](const BackwardContext& c) {
    Tensor* gx = c.grad_inputs[0];
    if (!gx) return;
    const Tensor& xv = *c.inputs[0];
    const std::size_t n = xv.cols();
    const double dn = static_cast<double>(n);
    std::vector<double> centered(n), dc(n);
    for (std::size_t r = 0; r < xv.rows(); ++r) {
      const auto in = xv.row(r);
      const auto g = c.grad_output.row(r);
      double mu = 0.0;
      for (double v : in) mu += v;
      mu /= dn;
      double var = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        centered[j] = in[j] - mu;
        var += centered[j] * centered[j];
      }
      var /= dn;
      const double sigma = std::sqrt(var);
      const double s = sigma + kernels::kLayerNormEps;
      double gc = 0.0;
      for (std::size_t j = 0; j < n; ++j) gc += g[j] * centered[j];
      // d sigma / d c_j = c_j / (n sigma); vanishes with the centered row.
      const double coupling = sigma > 0.0 ? gc / (s * s * dn * sigma) : 0.0;
      double dc_mean = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        dc[j] = g[j] / s - coupling * centered[j];
        dc_mean += dc[j];
      }
      dc_mean /= dn;
      auto d = gx->row(r);
      for (std::size_t j = 0; j < n; ++j) d[j] += dc[j] - dc_mean;
    }
  });
}

Var l2_normalize(Var x) {
  Tensor out = kernels::l2_normalize(x.value());
  return x.tape().record(std::move(out), {x}, [](const BackwardContext& c) {
    Tensor* gx = c.grad_inputs[0];
    if (!gx) return;
    const Tensor& xv = *c.inputs[0];
    for (std::size_t r = 0; r < xv.rows(); ++r) {
      const auto in = xv.row(r);
      const auto y = c.output.row(r);
      const auto g = c.grad_output.row(r);
      auto d = gx->row(r);
      double sq = 0.0;
      for (double v : in) sq += v * v;
      const double norm = std::sqrt(sq);
      if (norm > kernels::kNormEps) {
        double yg = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) yg += y[j] * g[j];
        for (std::size_t j = 0; j < g.size(); ++j) {
          d[j] += (g[j] - y[j] * yg) / norm;
        }
      } else {
        for (std::size_t j = 0; j < g.size(); ++j) {
          d[j] += g[j] / kernels::kNormEps;
        }
      }
    }
  });
}

Var segment_max(Var x, std::span<const std::size_t> sizes) {
  require_rank2("segment_max", x);
  const Tensor& xv = x.value();
  std::size_t total = 0;
  for (std::size_t s : sizes) {
    if (s == 0) throw DimensionError("segment_max: empty segment");
    total += s;
  }
  if (total != xv.rows() || sizes.empty()) {
    throw DimensionError("segment_max: segments cover " +
                         std::to_string(total) + " rows of " +
                         shape_string(xv.shape()));
  }
  const std::size_t cols = xv.cols();
  Tensor out = Tensor::zeros({sizes.size(), cols});
  std::vector<std::size_t> argmax(sizes.size() * cols);
  std::size_t start = 0;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::size_t best = start;
      for (std::size_t r = start + 1; r < start + sizes[s]; ++r) {
        if (xv.at(r, j) > xv.at(best, j)) best = r;
      }
      argmax[s * cols + j] = best;
      out.at(s, j) = xv.at(best, j);
    }
    start += sizes[s];
  }
  return x.tape().record(
      std::move(out), {x},
      [argmax = std::move(argmax), cols](const BackwardContext& c) {
        Tensor* gx = c.grad_inputs[0];
        if (!gx) return;
        const auto g = c.grad_output.values();
        auto d = gx->values();
        for (std::size_t i = 0; i < argmax.size(); ++i) {
          d[argmax[i] * cols + i % cols] += g[i];
        }
      });
}

Var reshape(Var x, Shape shape) {
  Tensor out = x.value().reshaped(std::move(shape));
  return x.tape().record(std::move(out), {x}, [](const BackwardContext& c) {
    accumulate(c.grad_inputs[0], c.grad_output);
  });
}

Var slice_rows(Var x, std::size_t begin, std::size_t count) {
  require_rank2("slice_rows", x);
  const Tensor& xv = x.value();
  if (count == 0 || begin + count > xv.rows()) {
    throw DimensionError("slice_rows: rows [" + std::to_string(begin) + ", " +
                         std::to_string(begin + count) + ") outside " +
                         shape_string(xv.shape()));
  }
  const std::size_t cols = xv.cols();
  std::vector<double> vals(xv.values().begin() + begin * cols,
                           xv.values().begin() + (begin + count) * cols);
  return x.tape().record(Tensor({count, cols}, std::move(vals)), {x},
                         [begin, cols](const BackwardContext& c) {
                           Tensor* gx = c.grad_inputs[0];
                           if (!gx) return;
                           const auto g = c.grad_output.values();
                           auto d = gx->values().subspan(begin * cols);
                           for (std::size_t i = 0; i < g.size(); ++i) {
                             d[i] += g[i];
                           }
                         });
}

Var concat_rows(std::span<const Var> parts) {
  if (parts.empty()) throw DimensionError("concat_rows: no inputs");
  const std::size_t cols = parts[0].value().cols();
  std::vector<double> vals;
  std::vector<std::size_t> offsets;
  std::size_t rows = 0;
  for (const Var& p : parts) {
    const Tensor& v = p.value();
    if (v.cols() != cols) {
      throw DimensionError("concat_rows: " + shape_string(v.shape()) +
                           " does not match width " + std::to_string(cols));
    }
    offsets.push_back(vals.size());
    vals.insert(vals.end(), v.values().begin(), v.values().end());
    rows += v.rows();
  }
  std::vector<Var> inputs(parts.begin(), parts.end());
  return parts[0].tape().record(
      Tensor({rows, cols}, std::move(vals)), std::move(inputs),
      [offsets = std::move(offsets)](const BackwardContext& c) {
        const auto g = c.grad_output.values();
        for (std::size_t k = 0; k < c.grad_inputs.size(); ++k) {
          Tensor* gk = c.grad_inputs[k];
          if (!gk) continue;
          auto d = gk->values();
          for (std::size_t i = 0; i < d.size(); ++i) d[i] += g[offsets[k] + i];
        }
      });
}

Var gather_rows(Var x, std::span<const std::size_t> rows) {
  require_rank2("gather_rows", x);
  const Tensor& xv = x.value();
  const std::size_t cols = xv.cols();
  if (rows.empty()) throw DimensionError("gather_rows: no rows requested");
  std::vector<double> vals;
  vals.reserve(rows.size() * cols);
  for (std::size_t r : rows) {
    if (r >= xv.rows()) {
      throw DimensionError("gather_rows: row " + std::to_string(r) +
                           " outside " + shape_string(xv.shape()));
    }
    const auto src = xv.row(r);
    vals.insert(vals.end(), src.begin(), src.end());
  }
  std::vector<std::size_t> index(rows.begin(), rows.end());
  return x.tape().record(
      Tensor({rows.size(), cols}, std::move(vals)), {x},
      [index = std::move(index)](const BackwardContext& c) {
        Tensor* gx = c.grad_inputs[0];
        if (!gx) return;
        for (std::size_t i = 0; i < index.size(); ++i) {
          const auto g = c.grad_output.row(i);
          auto d = gx->row(index[i]);
          for (std::size_t j = 0; j < g.size(); ++j) d[j] += g[j];
        }
      });
}

Var pick(Var x, std::span<const std::size_t> index) {
  require_rank2("pick", x);
  const Tensor& xv = x.value();
  if (index.size() != xv.rows()) {
    throw DimensionError("pick: " + std::to_string(index.size()) +
                         " indices for " + shape_string(xv.shape()));
  }
  std::vector<double> vals(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= xv.cols()) {
      throw DimensionError("pick: index " + std::to_string(index[i]) +
                           " outside " + shape_string(xv.shape()));
    }
    vals[i] = xv.at(i, index[i]);
  }
  std::vector<std::size_t> idx(index.begin(), index.end());
  return x.tape().record(Tensor::vector(std::move(vals)), {x},
                         [idx = std::move(idx)](const BackwardContext& c) {
                           Tensor* gx = c.grad_inputs[0];
                           if (!gx) return;
                           for (std::size_t i = 0; i < idx.size(); ++i) {
                             gx->at(i, idx[i]) += c.grad_output[i];
                           }
                         });
}

Var diag(Var x) {
  require_rank2("diag", x);
  const Tensor& xv = x.value();
  if (xv.dim(0) != xv.dim(1)) {
    throw DimensionError("diag: matrix is not square " +
                         shape_string(xv.shape()));
  }
  std::vector<std::size_t> idx(xv.dim(0));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return pick(x, idx);
}

}  // namespace jm3d::autodiff
