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

#ifndef JM3D_ENCODERS_FROZEN_H_
#define JM3D_ENCODERS_FROZEN_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jm3d/dataset/triplet.h"
#include "jm3d/encoders/features.h"

namespace jm3d::encoders {

// Construction parameters shared by the frozen text and image stubs.
struct FrozenEncoderSpec {
  std::uint64_t seed = 0x5eed;
  std::size_t vocab_size = 4096;
  std::size_t dim = 32;

  friend bool operator==(const FrozenEncoderSpec&,
                         const FrozenEncoderSpec&) = default;
};

// Lowercased maximal alphanumeric runs.
std::vector<std::string> tokenize(std::string_view text);

// Hash-embedding text encoder: tokens hash into a seeded table, get
// mean-pooled, pass through a fixed projection and are L2-normalized. Never
// trained, so it holds no tape parameters.
class FrozenTextEncoder {
 public:
  explicit FrozenTextEncoder(FrozenEncoderSpec spec);

  // Throws InputError for text without tokens.
  FeatureVec encode(std::string_view text) const;
  const FrozenEncoderSpec& spec() const { return spec_; }

 private:
  std::vector<double> token_row(std::string_view token) const;

  FrozenEncoderSpec spec_;
  std::vector<double> projection_;  // dim x dim
};

// Image stub. Precomputed features pass through (normalized); rasters are
// box-averaged to 16 x 16 grayscale in [0, 1], projected and normalized.
class FrozenImageEncoder {
 public:
  static constexpr std::size_t kGrid = 16;

  explicit FrozenImageEncoder(FrozenEncoderSpec spec);

  // Throws InputError for a view without payload, DimensionError when a
  // precomputed feature has the wrong width.
  FeatureVec encode(const dataset::ViewRecord& view) const;
  const FrozenEncoderSpec& spec() const { return spec_; }

 private:
  FrozenEncoderSpec spec_;
  std::vector<double> projection_;  // dim x (kGrid * kGrid)
};

}  // namespace jm3d::encoders

#endif  // JM3D_ENCODERS_FROZEN_H_
