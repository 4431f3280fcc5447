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

#ifndef JM3D_TRAINING_CHECKPOINT_H_
#define JM3D_TRAINING_CHECKPOINT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "jm3d/autodiff/parameters.h"
#include "jm3d/training/config.h"
#include "jm3d/training/optimizer.h"

namespace jm3d::training {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  TrainConfig config;
  std::size_t dim = 0;
  std::size_t parents = 0;
  std::uint64_t epoch = 0;
  autodiff::ParameterStore params;
  OptimizerState optimizer;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

// Little-endian layout:
//   "JM3DCKPT" u32 version
//   str config echo ("key=value\n" lines), u64 dim, u64 parents, u64 epoch
//   u32 parameter count, then per parameter (name order):
//     str name, u32 no_decay, u32 rank, rank x u64 dims, f64 values
//   u64 optimizer step, u32 moment count, then per moment (name order):
//     str name, f64 m values, f64 v values
// str = u32 length + bytes.
std::string encode_checkpoint(const Checkpoint& checkpoint);
// Throws IoError on truncation or a bad magic/version, ConfigError for an
// unparsable config echo.
Checkpoint decode_checkpoint(std::string_view bytes, const std::string& source);

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace jm3d::training

#endif  // JM3D_TRAINING_CHECKPOINT_H_
