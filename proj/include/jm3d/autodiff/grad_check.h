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

#ifndef JM3D_AUTODIFF_GRAD_CHECK_H_
#define JM3D_AUTODIFF_GRAD_CHECK_H_

#include <functional>
#include <map>
#include <string>

#include "jm3d/autodiff/parameters.h"
#include "jm3d/autodiff/tape.h"
#include "jm3d/autodiff/tensor.h"

namespace jm3d::autodiff {

// Scalar function of one differentiable input, built on the supplied tape.
using ScalarFn = std::function<Var(Tape&, Var)>;

// Scalar function of a parameter store (each call binds whatever it needs).
using ParameterFn = std::function<Var(Tape&, const ParameterStore&)>;

// |a - n| / max(|a|, |n|, 1e-8).
double relative_error(double analytic, double numeric);

// Max relative error between the tape gradient of f at x and central
// differences with step eps. Throws NumericError if f is non-finite at any
// probe point, ContractError if eps <= 0.
double grad_check(const ScalarFn& f, const Tensor& x, double eps);

// Per-parameter max relative error for a loss over a parameter store. Every
// coordinate of every parameter is probed.
std::map<std::string, double> grad_check_parameters(const ParameterFn& f,
                                                    const ParameterStore& params,
                                                    double eps);

}  // namespace jm3d::autodiff

#endif  // JM3D_AUTODIFF_GRAD_CHECK_H_
