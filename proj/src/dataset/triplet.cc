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

#include "jm3d/dataset/triplet.h"

#include <cmath>

#include "jm3d/common/errors.h"

namespace jm3d::dataset {

std::string_view view_kind_name(ViewKind kind) {
  return kind == ViewKind::kRgb ? "rgb" : "depth";
}

ViewKind parse_view_kind(std::string_view name) {
  if (name == "rgb") return ViewKind::kRgb;
  if (name == "depth") return ViewKind::kDepth;
  throw ValidationError("unknown view kind '" + std::string(name) + "'");
}

std::size_t angle_bucket(int angle_deg) {
  if (angle_deg < 0 || angle_deg % kAngleStepDeg != 0 ||
      angle_deg / kAngleStepDeg >= kAngleBuckets) {
    throw ContractError("angle " + std::to_string(angle_deg) +
                        " is not a multiple of 12 in [0, 348]");
  }
  return static_cast<std::size_t>(angle_deg / kAngleStepDeg);
}

double circular_distance(double a_deg, double b_deg) {
  double d = std::fmod(std::abs(a_deg - b_deg), 360.0);
  return std::min(d, 360.0 - d);
}

}  // namespace jm3d::dataset
