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

#include "jm3d/dataset/synthetic.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "jm3d/common/errors.h"
#include "jm3d/common/random.h"
#include "jm3d/dataset/manifest.h"

namespace jm3d::dataset {
namespace {

constexpr std::size_t kLatent = 8;
constexpr std::size_t kShapeParams = 6;
constexpr std::size_t kAngleCode = 4;

constexpr std::array<const char*, 16> kParentWords = {
    "airplane", "bed",  "bottle", "car",   "chair",  "lamp",  "sofa",  "table",
    "guitar",   "bench", "bowl",  "piano", "cabinet", "clock", "faucet", "knife"};

constexpr std::array<const char*, 48> kSubWords = {
    "jet",      "bunk",    "flask",   "sedan",    "armchair", "sconce",
    "loveseat", "desk",    "ukulele", "pew",      "basin",    "upright",
    "glider",   "cot",     "jug",     "coupe",    "stool",    "lantern",
    "futon",    "counter", "banjo",   "bleacher", "tureen",   "harpsichord",
    "biplane",  "hammock", "carafe",  "roadster", "throne",   "torch",
    "divan",    "altar",   "lute",    "settee",   "chalice",  "organ",
    "airliner", "crib",    "decanter", "wagon",   "rocker",   "candelabra",
    "ottoman",  "podium",  "mandolin", "ledge",   "goblet",   "clavier"};

std::string numbered(const char* word, std::size_t index, std::size_t pool) {
  std::string name = word;
  if (index >= pool) name += std::to_string(index / pool);
  return name;
}

std::vector<double> gaussian(Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

// out = M v for a row-major rows x cols matrix.
std::vector<double> apply(const std::vector<double>& m, std::size_t rows,
                          std::size_t cols, const std::vector<double>& v) {
  std::vector<double> out(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out[r] += m[r * cols + c] * v[c];
  }
  return out;
}

double signed_pow(double base, double e) {
  const double mag = std::pow(std::abs(base), e);
  return base < 0.0 ? -mag : mag;
}

double round_f32(double v) { return static_cast<double>(static_cast<float>(v)); }

PointCloud superquadric(const std::vector<double>& q, std::size_t n, Rng& rng) {
  const double a0 = std::exp(0.45 * std::tanh(q[0]));
  const double a1 = std::exp(0.45 * std::tanh(q[1]));
  const double a2 = std::exp(0.45 * std::tanh(q[2]));
  const double e1 = 0.25 + 1.5 / (1.0 + std::exp(-q[3]));
  const double e2 = 0.25 + 1.5 / (1.0 + std::exp(-q[4]));
  const double taper = 0.6 * std::tanh(q[5]);
  PointCloud cloud;
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double eta = rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
    const double w = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const double ce = signed_pow(std::cos(eta), e1);
    const double z = a2 * signed_pow(std::sin(eta), e1);
    const double t = 1.0 + taper * z / a2;
    Point3 p{a0 * ce * signed_pow(std::cos(w), e2) * t,
             a1 * ce * signed_pow(std::sin(w), e2) * t, z};
    for (double& c : p) c += 0.01 * rng.normal();
    cloud.points.push_back(p);
  }
  cloud = normalize(std::move(cloud));
  for (Point3& p : cloud.points) {
    for (double& c : p) c = round_f32(c);
  }
  return cloud;
}

}  // namespace

Dataset synth_samples(const SynthConfig& config, std::uint64_t seed) {
  if (config.parents == 0 || config.subs_per_parent == 0 ||
      config.samples_per_sub == 0 || config.points == 0 || config.dim == 0) {
    throw ConfigError("synthetic config: all counts must be positive");
  }
  for (double v : {config.sub_spread, config.sample_spread, config.feature_noise,
                   config.anchor_weight}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError("synthetic config: spreads and weights must be nonnegative");
    }
  }
  if (!(config.missing_sub_fraction >= 0.0 && config.missing_sub_fraction <= 1.0)) {
    throw ConfigError("synthetic config: missing_sub_fraction must be in [0, 1]");
  }
  const std::size_t d = config.dim;
  Rng rng(seed);

  const auto shape_map = gaussian(rng, kShapeParams * kLatent);
  std::array<std::vector<double>, 2> feature_map, angle_map;
  for (std::size_t k = 0; k < 2; ++k) {
    feature_map[k] = gaussian(rng, d * kLatent);
    angle_map[k] = gaussian(rng, d * kAngleCode);
  }

  Dataset dataset;
  dataset.dim = d;
  std::size_t sub_counter = 0;
  for (std::size_t p = 0; p < config.parents; ++p) {
    const std::string parent =
        numbered(kParentWords[p % kParentWords.size()], p, kParentWords.size());
    const auto z_parent = gaussian(rng, kLatent);
    for (std::size_t s = 0; s < config.subs_per_parent; ++s, ++sub_counter) {
      const std::string sub = numbered(kSubWords[sub_counter % kSubWords.size()],
                                       sub_counter, kSubWords.size());
      auto z_sub = gaussian(rng, kLatent, config.sub_spread);
      for (std::size_t i = 0; i < kLatent; ++i) z_sub[i] += z_parent[i];

      std::vector<double> anchor;
      if (config.class_anchor) {
        anchor = config.class_anchor(sub);
        if (anchor.size() != d) {
          throw ConfigError("synthetic config: class anchor for '" + sub +
                            "' has width " + std::to_string(anchor.size()));
        }
      }
      for (std::size_t m = 0; m < config.samples_per_sub; ++m) {
        Rng local(rng.fork_seed());
        auto z = gaussian(local, kLatent, config.sample_spread);
        for (std::size_t i = 0; i < kLatent; ++i) z[i] += z_sub[i];

        TripletSample sample;
        char id[16];
        std::snprintf(id, sizeof(id), "s%06zu", dataset.samples.size());
        sample.id = id;
        sample.parent = parent;
        sample.sub = sub;
        sample.cloud = superquadric(apply(shape_map, kShapeParams, kLatent, z),
                                    config.points, local);
        for (int b = 0; b < kAngleBuckets; ++b) {
          const int angle = b * kAngleStepDeg;
          const double th = angle * std::numbers::pi / 180.0;
          const std::vector<double> code{std::cos(th), std::sin(th),
                                         std::cos(2 * th), std::sin(2 * th)};
          for (std::size_t k = 0; k < 2; ++k) {
            auto f = apply(feature_map[k], d, kLatent, z);
            const auto a = apply(angle_map[k], d, kAngleCode, code);
            for (std::size_t j = 0; j < d; ++j) {
              f[j] += 0.5 * a[j] + config.feature_noise * local.normal();
            }
            if (!anchor.empty()) {
              double norm = 0.0;
              for (double x : f) norm += x * x;
              const double lean = config.anchor_weight * std::sqrt(norm);
              for (std::size_t j = 0; j < d; ++j) f[j] += lean * anchor[j];
            }
            for (double& x : f) x = round_f32(x);
            sample.views.push_back(ViewRecord{
                angle, k == 0 ? ViewKind::kRgb : ViewKind::kDepth, std::move(f)});
          }
        }
        if (local.uniform() < config.missing_sub_fraction) sample.sub.reset();
        dataset.samples.push_back(std::move(sample));
      }
    }
  }
  return dataset;
}

Dataset synth_generate(const SynthConfig& config, std::uint64_t seed,
                       const std::filesystem::path& dir) {
  Dataset dataset = synth_samples(config, seed);
  save_dataset(dataset, dir);
  return dataset;
}

}  // namespace jm3d::dataset
