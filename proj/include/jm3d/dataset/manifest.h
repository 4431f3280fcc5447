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

#ifndef JM3D_DATASET_MANIFEST_H_
#define JM3D_DATASET_MANIFEST_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "jm3d/dataset/triplet.h"

namespace jm3d::dataset {

// On-disk layout
// --------------
// manifest.jsonl: UTF-8, one JSON object per line.
//   line 1:  {"version":"jm3d-1","dim":D}
//   line k:  {"id":..., "parent":..., "sub":"..."|null, "cloud_file":...,
//             "views":[{"angle":A, "kind":"rgb"|"depth",
//                       "feature_file":F, "row":R} | {..., "image_file":I}]}
// File references are relative to the manifest's directory. "row" selects a
// row of a multi-row feature file and defaults to 0.
//
// Payloads, all little-endian:
//   cloud file:   u32 count, then count x 3 f32 (x, y, z)
//   feature file: u32 count, u32 dim, then count x dim f32
//   image file:   u32 height, u32 width, u32 channels, then H*W*C u8
inline constexpr std::string_view kManifestFileName = "manifest.jsonl";

// Loads and validates a dataset. `path` may name the manifest file or the
// directory containing manifest.jsonl. Every violating record is collected
// and reported in one ValidationError (missing files, malformed lines,
// dimension mismatches, invalid angles, duplicate ids).
Dataset load_manifest(const std::filesystem::path& path);

// Writes manifest.jsonl plus clouds/<id>.bin, features/<id>.bin (all of a
// sample's feature views as rows of one file) and images/<id>_<k>.img into
// `dir`. Output is a pure function of the dataset. Coordinates and features
// are stored as f32.
void save_dataset(const Dataset& dataset, const std::filesystem::path& dir);

std::string encode_cloud(const PointCloud& cloud);
PointCloud decode_cloud(std::string_view bytes, const std::string& source);

struct FeatureRows {
  std::size_t count = 0;
  std::size_t dim = 0;
  std::vector<double> values;
};
std::string encode_features(std::size_t dim, std::span<const double> rows);
FeatureRows decode_features(std::string_view bytes, const std::string& source);

std::string encode_raster(const Raster& raster);
Raster decode_raster(std::string_view bytes, const std::string& source);

}  // namespace jm3d::dataset

#endif  // JM3D_DATASET_MANIFEST_H_
