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

#ifndef JM3D_TESTS_SUPPORT_DESK_H_
#define JM3D_TESTS_SUPPORT_DESK_H_

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "jm3d/dataset/category_tree.h"
#include "jm3d/dataset/synthetic.h"
#include "jm3d/encoders/frozen.h"
#include "jm3d/training/config.h"
#include "jm3d/training/model.h"

// Shared desk-scale benchmark: 4 parents x 3 subcategories x 20 samples,
// 256 points, D = 32, views leaning towards the frozen text features.
namespace jm3d::testing {

inline constexpr std::uint64_t kDeskDataSeed = 7;

inline training::TrainConfig desk_config(std::uint64_t seed) {
  training::TrainConfig c;
  c.epochs = 50;
  c.batch_size = 16;
  c.lr = 1e-2;
  c.seed = seed;
  return c;
}

inline dataset::SynthConfig desk_synth(const training::TrainConfig& c) {
  dataset::SynthConfig s;
  s.parents = 4;
  s.subs_per_parent = 3;
  s.samples_per_sub = 20;
  s.points = 256;
  s.dim = 32;
  auto text = std::make_shared<encoders::FrozenTextEncoder>(
      encoders::FrozenEncoderSpec{c.encoder_seed, c.vocab, s.dim});
  s.class_anchor = [text](const std::string& name) {
    return text->encode(training::make_prompt(name)).values;
  };
  return s;
}

inline dataset::Dataset desk_data(std::uint64_t seed = kDeskDataSeed) {
  return dataset::synth_samples(desk_synth(desk_config(0)), seed);
}

inline std::vector<std::size_t> all_indices(const dataset::Dataset& d) {
  std::vector<std::size_t> v(d.samples.size());
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

}  // namespace jm3d::testing

#endif  // JM3D_TESTS_SUPPORT_DESK_H_
