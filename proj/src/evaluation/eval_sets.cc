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

#include "jm3d/evaluation/eval_sets.h"

#include <set>
#include <sstream>

#include "jm3d/common/binary_io.h"
#include "jm3d/common/errors.h"
#include "jm3d/common/hashing.h"

namespace jm3d::evaluation {
namespace {

constexpr std::uint64_t kAllChecksum = 0xe4cb985247809de4ULL;
constexpr std::uint64_t kMediumChecksum = 0xbe6916a1cc22411aULL;
constexpr std::uint64_t kHardChecksum = 0x63fae1b38c394120ULL;

EvalSet checked(std::string name, std::vector<std::string> classes,
                std::uint64_t checksum) {
  if (class_list_checksum(classes) != checksum) {
    throw ContractError("built-in class list '" + name + "' failed its checksum");
  }
  return {std::move(name), std::move(classes)};
}

ModelNetSets build_sets() {
  ModelNetSets s;
  s.all = checked("all",
                  {"airplane", "bathtub", "bed", "bench", "bookshelf",
                   "bottle", "bowl", "car", "chair", "cone",
                   "cup", "curtain", "desk", "door", "dresser",
                   "flower_pot", "glass_box", "guitar", "keyboard", "lamp",
                   "laptop", "mantel", "monitor", "night_stand", "person",
                   "piano", "plant", "radio", "range_hood", "sink",
                   "sofa", "stairs", "stool", "table", "tent",
                   "toilet", "tv_stand", "vase", "wardrobe", "xbox"},
                  kAllChecksum);
  s.medium = checked("medium",
                     {"cone", "cup", "curtain", "door", "dresser",
                      "glass_box", "mantel", "monitor", "night_stand", "person",
                      "plant", "radio", "range_hood", "sink", "stairs",
                      "stool", "tent", "toilet", "tv_stand", "vase",
                      "wardrobe", "xbox"},
                     kMediumChecksum);
  s.hard = checked("hard",
                   {"cone", "curtain", "door", "dresser", "glass_box",
                    "mantel", "night_stand", "person", "plant", "radio",
                    "range_hood", "sink", "stairs", "tent", "toilet",
                    "tv_stand", "xbox"},
                   kHardChecksum);
  return s;
}

}  // namespace

std::uint64_t class_list_checksum(std::span<const std::string> classes) {
  std::string joined;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i > 0) joined += '\n';
    joined += classes[i];
  }
  return fnv1a64(joined);
}

const ModelNetSets& modelnet_eval_sets() {
  static const ModelNetSets sets = build_sets();
  return sets;
}

void check_class_list(std::span<const std::string> classes) {
  std::set<std::string> seen;
  for (const auto& c : classes) {
    if (c.empty()) throw ValidationError("class list contains an empty name");
    if (!seen.insert(c).second) {
      throw ValidationError("class list contains '" + c + "' twice");
    }
  }
}

EvalSet load_custom_set(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  EvalSet set{"custom", {}};
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    set.classes.push_back(line.substr(b, e - b + 1));
  }
  check_class_list(set.classes);
  if (set.classes.size() < 2) {
    throw ValidationError(path.string() + ": need at least two classes");
  }
  return set;
}

}  // namespace jm3d::evaluation
