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

#ifndef JM3D_CLI_CONFIG_FILE_H_
#define JM3D_CLI_CONFIG_FILE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "jm3d/training/config.h"

namespace jm3d::cli {

struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

// Flat "key = value" text. '#' starts a comment; blank lines are ignored;
// keys may use '-' or '_'. Throws ConfigError naming the line of a
// malformed entry.
std::vector<ConfigEntry> parse_config_text(std::string_view text, const std::string& source);

// Reads and applies a config file onto `config`. Throws IoError when the file
// cannot be read.
void apply_config_file(training::TrainConfig& config, const std::filesystem::path& path);

}  // namespace jm3d::cli

#endif  // JM3D_CLI_CONFIG_FILE_H_
