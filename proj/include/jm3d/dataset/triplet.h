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

#ifndef JM3D_DATASET_TRIPLET_H_
#define JM3D_DATASET_TRIPLET_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jm3d/dataset/point_cloud.h"

namespace jm3d::dataset {

inline constexpr int kAngleStepDeg = 12;
inline constexpr int kAngleBuckets = 30;
inline constexpr std::string_view kManifestVersion = "jm3d-1";

enum class ViewKind { kRgb, kDepth };

std::string_view view_kind_name(ViewKind kind);
// Throws ValidationError for anything other than "rgb" / "depth".
ViewKind parse_view_kind(std::string_view name);

// 8-bit interleaved raster, row-major H x W x C.
struct Raster {
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::uint32_t channels = 0;
  std::vector<std::uint8_t> pixels;

  friend bool operator==(const Raster&, const Raster&) = default;
};

using PrecomputedFeature = std::vector<double>;

// One rendered view. `payload` is monostate when the record carries neither
// a raster nor a precomputed feature.
struct ViewRecord {
  int angle_deg = 0;
  ViewKind kind = ViewKind::kRgb;
  std::variant<std::monostate, Raster, PrecomputedFeature> payload;

  friend bool operator==(const ViewRecord&, const ViewRecord&) = default;
};

struct TripletSample {
  std::string id;
  PointCloud cloud;
  std::vector<ViewRecord> views;
  std::string parent;
  std::optional<std::string> sub;

  friend bool operator==(const TripletSample&, const TripletSample&) = default;
};

struct Dataset {
  std::string version{kManifestVersion};
  std::size_t dim = 0;
  std::vector<TripletSample> samples;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// angle / 12 for angles that are multiples of 12 in [0, 348]; ContractError
// otherwise.
std::size_t angle_bucket(int angle_deg);

// min(|a - b|, 360 - |a - b|) on angles reduced mod 360.
double circular_distance(double a_deg, double b_deg);

}  // namespace jm3d::dataset

#endif  // JM3D_DATASET_TRIPLET_H_
