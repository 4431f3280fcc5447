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

#include "jm3d/autodiff/grad_check.h"

#include <algorithm>
#include <cmath>

#include "jm3d/common/errors.h"

namespace jm3d::autodiff {
namespace {

double finite_or_throw(double v, const char* where) {
  if (!std::isfinite(v)) {
    throw NumericError(std::string("grad_check: non-finite value at ") + where);
  }
  return v;
}

}  // namespace

double relative_error(double analytic, double numeric) {
  const double denom =
      std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / denom;
}

double grad_check(const ScalarFn& f, const Tensor& x, double eps) {
  if (!(eps > 0.0)) throw ContractError("grad_check: eps must be positive");
  Tensor analytic;
  {
    Tape tape;
    Var in = tape.leaf(x);
    Var loss = f(tape, in);
    finite_or_throw(loss.value().item(), "x");
    tape.backward(loss);
    analytic = tape.grad(in);
  }
  auto eval = [&](const Tensor& probe) {
    Tape tape;
    return finite_or_throw(f(tape, tape.leaf(probe)).value().item(), "probe");
  };
  double worst = 0.0;
  Tensor probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + eps;
    const double up = eval(probe);
    probe[i] = x[i] - eps;
    const double down = eval(probe);
    probe[i] = x[i];
    worst = std::max(worst,
                     relative_error(analytic[i], (up - down) / (2.0 * eps)));
  }
  return worst;
}

std::map<std::string, double> grad_check_parameters(const ParameterFn& f,
                                                    const ParameterStore& params,
                                                    double eps) {
  if (!(eps > 0.0)) throw ContractError("grad_check: eps must be positive");
  GradientMap analytic;
  {
    Tape tape;
    Var loss = f(tape, params);
    finite_or_throw(loss.value().item(), "parameters");
    analytic = tape.backward(loss);
  }
  auto eval = [&](const ParameterStore& probe) {
    Tape tape;
    return finite_or_throw(f(tape, probe).value().item(), "probe");
  };
  std::map<std::string, double> out;
  ParameterStore probe = params;
  for (const std::string& name : params.names()) {
    const Tensor& base = params.value(name);
    auto it = analytic.find(name);
    const Tensor grad = it != analytic.end() ? it->second
                                             : Tensor::zeros(base.shape());
    double worst = 0.0;
    Tensor& slot = probe.mutable_value(name);
    for (std::size_t i = 0; i < base.size(); ++i) {
      slot[i] = base[i] + eps;
      const double up = eval(probe);
      slot[i] = base[i] - eps;
      const double down = eval(probe);
      slot[i] = base[i];
      worst = std::max(worst,
                       relative_error(grad[i], (up - down) / (2.0 * eps)));
    }
    out[name] = worst;
  }
  return out;
}

}  // namespace jm3d::autodiff
