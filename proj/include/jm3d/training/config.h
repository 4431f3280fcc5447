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

#ifndef JM3D_TRAINING_CONFIG_H_
#define JM3D_TRAINING_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jm3d::training {

// Every knob of a training run. Keys accepted by apply_setting() are the
// field names below (e.g. "batch_size", "within_view").
struct TrainConfig {
  std::size_t batch_size = 128;
  double lr = 1e-3;
  std::size_t epochs = 250;
  std::size_t views = 2;
  double omega = 60.0;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  double weight_decay = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 0;

  // Ablation switches.
  bool cis = true;
  bool htt = true;
  bool jma = true;
  bool embeddings = true;
  bool within_view = true;

  double temperature = 0.07;
  bool learn_temperature = true;
  bool symmetric = true;
  bool normalize = true;

  std::size_t point_hidden = 32;
  std::size_t head_hidden = 32;
  double embed_scale = 0.25;
  std::uint64_t encoder_seed = 0x5eed;
  std::size_t vocab = 4096;
  double holdout = 0.2;

  // Views actually drawn per sample: 1 when CIS is off.
  std::size_t effective_views() const { return cis ? views : 1; }

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Throws ConfigError naming the first violated invariant.
void validate(const TrainConfig& config);

// Sets one field from text. Throws ConfigError for an unknown key or a value
// that does not parse. Booleans accept true/false/1/0/on/off.
void apply_setting(TrainConfig& config, std::string_view key, std::string_view value);

// Every field as (key, value) in declaration order; doubles use 17
// significant digits so the echo parses back exactly.
std::vector<std::pair<std::string, std::string>> to_key_values(const TrainConfig& config);

// "key=value\n" lines of to_key_values().
std::string config_echo(const TrainConfig& config);

// FNV-1a of config_echo(), as 16 hex digits.
std::string config_hash(const TrainConfig& config);

}  // namespace jm3d::training

#endif  // JM3D_TRAINING_CONFIG_H_
