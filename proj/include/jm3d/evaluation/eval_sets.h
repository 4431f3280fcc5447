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

#ifndef JM3D_EVALUATION_EVAL_SETS_H_
#define JM3D_EVALUATION_EVAL_SETS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace jm3d::evaluation {

struct EvalSet {
  std::string name;
  std::vector<std::string> classes;
};

struct ModelNetSets {
  EvalSet all;     // 40 classes
  EvalSet medium;  // 22: drops exact pre-training category names
  EvalSet hard;    // 17: also drops their synonyms
};

// The built-in ModelNet40 class lists. Each list is checked against an
// embedded checksum; a mismatch throws ContractError.
const ModelNetSets& modelnet_eval_sets();

// FNV-1a over the names joined with '\n'.
std::uint64_t class_list_checksum(std::span<const std::string> classes);

// One class name per line; blank lines and '#' comments skipped. Throws
// IoError for an unreadable file, ValidationError for duplicates or fewer
// than two classes.
EvalSet load_custom_set(const std::filesystem::path& path);

// Throws ValidationError for duplicate or empty names.
void check_class_list(std::span<const std::string> classes);

}  // namespace jm3d::evaluation

#endif  // JM3D_EVALUATION_EVAL_SETS_H_
