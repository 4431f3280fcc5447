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

#ifndef JM3D_ALIGNMENT_HEADS_H_
#define JM3D_ALIGNMENT_HEADS_H_

#include <cstddef>

#include "jm3d/autodiff/parameters.h"
#include "jm3d/autodiff/tape.h"
#include "jm3d/common/random.h"

namespace jm3d::alignment {

struct HeadsConfig {
  std::size_t dim = 32;
  std::size_t hidden = 32;
  std::size_t parents = 4;
  double temperature = 0.07;
  bool learn_temperature = true;
};

// Trainable temperature (stored as log tau) and the parent classifier
// theta: D -> H (ReLU) -> P. Parameter names:
//   align.log_tau, align.theta.w1/b1/w2/b2
class AlignmentHeads {
 public:
  explicit AlignmentHeads(HeadsConfig config);

  const HeadsConfig& config() const { return config_; }

  void init_parameters(autodiff::ParameterStore& store, Rng& rng) const;

  // 1 / tau as a [1] node. A fixed temperature becomes a constant.
  autodiff::Var inverse_temperature(autodiff::Tape& tape,
                                    const autodiff::ParameterStore& store) const;
  double temperature(const autodiff::ParameterStore& store) const;

  // [N x P] parent logits.
  autodiff::Var parent_logits(autodiff::Tape& tape,
                              const autodiff::ParameterStore& store,
                              autodiff::Var features) const;

 private:
  HeadsConfig config_;
};

}  // namespace jm3d::alignment

#endif  // JM3D_ALIGNMENT_HEADS_H_
