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

#include "jm3d/encoders/frozen.h"

#include <cctype>
#include <cmath>

#include "jm3d/common/errors.h"
#include "jm3d/common/hashing.h"
#include "jm3d/common/random.h"

namespace jm3d::encoders {
namespace {

constexpr std::uint64_t kTextStream = 0x7465787400000000ULL;
constexpr std::uint64_t kImageStream = 0x696d616765000000ULL;

std::vector<double> gaussian_matrix(std::uint64_t seed, std::size_t rows,
                                    std::size_t cols) {
  Rng rng(seed);
  std::vector<double> m(rows * cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
  for (double& v : m) v = scale * rng.normal();
  return m;
}

std::vector<double> project(const std::vector<double>& m, std::size_t rows,
                            std::span<const double> x) {
  const std::size_t cols = x.size();
  std::vector<double> out(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out[r] += m[r * cols + c] * x[c];
  }
  return out;
}

void check_spec(const FrozenEncoderSpec& spec) {
  if (spec.dim == 0 || spec.vocab_size == 0) {
    throw ConfigError("frozen encoder: dim and vocab_size must be positive");
  }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

FrozenTextEncoder::FrozenTextEncoder(FrozenEncoderSpec spec) : spec_(spec) {
  check_spec(spec_);
  projection_ = gaussian_matrix(Rng::mix(spec_.seed ^ kTextStream), spec_.dim,
                                spec_.dim);
}

std::vector<double> FrozenTextEncoder::token_row(std::string_view token) const {
  const std::uint64_t bucket = fnv1a64(token) % spec_.vocab_size;
  Rng rng(Rng::mix(spec_.seed ^ Rng::mix(bucket + 1)));
  std::vector<double> row(spec_.dim);
  for (double& v : row) v = rng.normal();
  return row;
}

FeatureVec FrozenTextEncoder::encode(std::string_view text) const {
  const auto tokens = tokenize(text);
  if (tokens.empty()) {
    throw InputError("text encoder: no tokens in '" + std::string(text) + "'");
  }
  std::vector<double> pooled(spec_.dim, 0.0);
  for (const std::string& t : tokens) {
    const auto row = token_row(t);
    for (std::size_t j = 0; j < spec_.dim; ++j) pooled[j] += row[j];
  }
  for (double& v : pooled) v /= static_cast<double>(tokens.size());
  return normalized(FeatureVec{project(projection_, spec_.dim, pooled), false});
}

FrozenImageEncoder::FrozenImageEncoder(FrozenEncoderSpec spec) : spec_(spec) {
  check_spec(spec_);
  projection_ = gaussian_matrix(Rng::mix(spec_.seed ^ kImageStream), spec_.dim,
                                kGrid * kGrid);
}

FeatureVec FrozenImageEncoder::encode(const dataset::ViewRecord& view) const {
  if (const auto* f = std::get_if<dataset::PrecomputedFeature>(&view.payload)) {
    if (f->size() != spec_.dim) {
      throw DimensionError("image encoder: precomputed feature has width " +
                           std::to_string(f->size()) + ", expected " +
                           std::to_string(spec_.dim));
    }
    return normalized(FeatureVec{*f, false});
  }
  const auto* img = std::get_if<dataset::Raster>(&view.payload);
  if (!img) throw InputError("image encoder: view has no payload");
  if (img->height == 0 || img->width == 0 || img->channels == 0 ||
      img->pixels.size() != std::size_t{img->height} * img->width * img->channels) {
    throw InputError("image encoder: malformed raster");
  }
  // Each source pixel lands in the grid cell that contains it; cells left
  // empty (sources smaller than the grid) take the nearest source pixel.
  std::vector<double> sum(kGrid * kGrid, 0.0), count(kGrid * kGrid, 0.0);
  auto gray = [&](std::size_t y, std::size_t x) {
    double g = 0.0;
    const std::size_t base = (y * img->width + x) * img->channels;
    for (std::size_t c = 0; c < img->channels; ++c) g += img->pixels[base + c];
    return g / (255.0 * img->channels);
  };
  for (std::size_t y = 0; y < img->height; ++y) {
    const std::size_t gy = y * kGrid / img->height;
    for (std::size_t x = 0; x < img->width; ++x) {
      const std::size_t cell = gy * kGrid + x * kGrid / img->width;
      sum[cell] += gray(y, x);
      count[cell] += 1.0;
    }
  }
  std::vector<double> grid(kGrid * kGrid);
  for (std::size_t gy = 0; gy < kGrid; ++gy) {
    for (std::size_t gx = 0; gx < kGrid; ++gx) {
      const std::size_t cell = gy * kGrid + gx;
      if (count[cell] > 0.0) {
        grid[cell] = sum[cell] / count[cell];
      } else {
        grid[cell] = gray((2 * gy + 1) * img->height / (2 * kGrid),
                          (2 * gx + 1) * img->width / (2 * kGrid));
      }
    }
  }
  return normalized(FeatureVec{project(projection_, spec_.dim, grid), false});
}

}  // namespace jm3d::encoders
