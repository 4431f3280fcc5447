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

#ifndef JM3D_DATASET_SYNTHETIC_H_
#define JM3D_DATASET_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "jm3d/dataset/triplet.h"

namespace jm3d::dataset {

struct SynthConfig {
  std::size_t parents = 4;
  std::size_t subs_per_parent = 3;
  std::size_t samples_per_sub = 20;
  std::size_t points = 256;
  std::size_t dim = 32;
  // Probability that a sample is written without its subcategory label.
  double missing_sub_fraction = 0.0;
  // Latent spread of subcategories around their parent, and of samples
  // around their subcategory.
  double sub_spread = 0.8;
  double sample_spread = 0.15;
  // Per-coordinate noise on view features.
  double feature_noise = 0.3;
  // Optional unit direction per subcategory name that view features lean
  // towards, imitating an image encoder pre-aligned with the text encoder.
  std::function<std::vector<double>(const std::string&)> class_anchor = {};
  double anchor_weight = 1.0;
};

// Deterministic synthetic triplet dataset.
//
// Generator: std::mt19937_64 seeded with `seed`, sampled only through
// jm3d::Rng (portable uniform, Box-Muller normal), so the output is
// bit-identical on every platform. Draw order:
//
//  1. Fixed maps, in this order: shape map U (6 x 8), then for rgb and depth
//     a feature map W_k (D x 8) and an angle map A_k (D x 4), all N(0, 1).
//  2. Per parent p: latent z_p ~ N(0, I_8). Per subcategory s of p:
//     z_s = z_p + sub_spread * N(0, I_8).
//  3. Per sample (subcategories in order, samples within each), a child
//     stream Rng(fork_seed()) draws z = z_s + sample_spread * N(0, I_8) and then:
//     - superquadric parameters q = U z:
//         scales a_i = exp(0.45 tanh q_i) (i = 0..2),
//         exponents e1 = 0.25 + 1.5 sigmoid(q_3), e2 = 0.25 + 1.5 sigmoid(q_4),
//         taper t = 0.6 tanh(q_5);
//     - `points` surface samples at eta ~ U(-pi/2, pi/2), w ~ U(-pi, pi):
//         x = a0 C(eta, e1) C(w, e2), y = a1 C(eta, e1) S(w, e2),
//         z = a2 S(eta, e1), with C(t, e) = sgn(cos t)|cos t|^e and S the
//         sine analogue; x and y scaled by (1 + t z / a2); then N(0, 0.01)
//         jitter per coordinate; then centered and scaled to unit radius;
//     - for every angle 0, 12, ..., 348 and kind in (rgb, depth), feature
//         f = W_k z + 0.5 A_k [cos th, sin th, cos 2th, sin 2th]
//             + feature_noise N(0, I_D),
//       then, with an anchor u = class_anchor(sub),
//         f += anchor_weight * |f| * u;
//     - with probability missing_sub_fraction the subcategory label is
//         dropped (one uniform draw per sample, taken last).
//  Coordinates and features are rounded to f32 so that saving and reloading
//  is lossless.
//
// Names come from fixed word lists (numbered when the lists run out); ids
// are "s000000", "s000001", ... Throws ConfigError for zero counts.
Dataset synth_samples(const SynthConfig& config, std::uint64_t seed);

// synth_samples + save_dataset into `dir`. Returns the in-memory dataset.
Dataset synth_generate(const SynthConfig& config, std::uint64_t seed,
                       const std::filesystem::path& dir);

}  // namespace jm3d::dataset

#endif  // JM3D_DATASET_SYNTHETIC_H_
