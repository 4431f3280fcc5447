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

#include "jm3d/dataset/manifest.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "jm3d/common/binary_io.h"
#include "jm3d/common/errors.h"

namespace jm3d::dataset {
namespace fs = std::filesystem;
using nlohmann::json;

std::string encode_cloud(const PointCloud& cloud) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(cloud.size()));
  for (const Point3& p : cloud.points) {
    for (double c : p) w.f32(static_cast<float>(c));
  }
  return w.buffer();
}

PointCloud decode_cloud(std::string_view bytes, const std::string& source) {
  ByteReader r(bytes, source);
  const std::uint32_t count = r.u32();
  if (count == 0) throw ValidationError(source + ": empty point cloud");
  if (r.remaining() != std::size_t{count} * 12) {
    throw ValidationError(source + ": expected " + std::to_string(count) +
                          " points, payload has " +
                          std::to_string(r.remaining()) + " bytes");
  }
  PointCloud cloud;
  cloud.points.resize(count);
  for (Point3& p : cloud.points) {
    for (double& c : p) c = r.f32();
  }
  return cloud;
}

std::string encode_features(std::size_t dim, std::span<const double> rows) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(rows.size() / dim));
  w.u32(static_cast<std::uint32_t>(dim));
  for (double v : rows) w.f32(static_cast<float>(v));
  return w.buffer();
}

FeatureRows decode_features(std::string_view bytes, const std::string& source) {
  ByteReader r(bytes, source);
  FeatureRows out;
  out.count = r.u32();
  out.dim = r.u32();
  if (out.count == 0 || out.dim == 0) {
    throw ValidationError(source + ": empty feature file");
  }
  if (r.remaining() != out.count * out.dim * 4) {
    throw ValidationError(source + ": size does not match " +
                          std::to_string(out.count) + "x" +
                          std::to_string(out.dim) + " f32 rows");
  }
  out.values.resize(out.count * out.dim);
  for (double& v : out.values) v = r.f32();
  return out;
}

std::string encode_raster(const Raster& raster) {
  ByteWriter w;
  w.u32(raster.height);
  w.u32(raster.width);
  w.u32(raster.channels);
  w.bytes(std::string_view(reinterpret_cast<const char*>(raster.pixels.data()),
                           raster.pixels.size()));
  return w.buffer();
}

Raster decode_raster(std::string_view bytes, const std::string& source) {
  ByteReader r(bytes, source);
  Raster out;
  out.height = r.u32();
  out.width = r.u32();
  out.channels = r.u32();
  const std::size_t n =
      std::size_t{out.height} * out.width * std::size_t{out.channels};
  if (n == 0 || r.remaining() != n) {
    throw ValidationError(source + ": raster payload does not match " +
                          std::to_string(out.height) + "x" +
                          std::to_string(out.width) + "x" +
                          std::to_string(out.channels));
  }
  const auto raw = r.bytes(n);
  out.pixels.assign(raw.begin(), raw.end());
  return out;
}

namespace {

class ErrorLog {
 public:
  void add(const std::string& where, const std::string& what) {
    messages_.push_back(where + ": " + what);
  }
  bool empty() const { return messages_.empty(); }
  [[noreturn]] void raise(const fs::path& manifest) const {
    std::ostringstream os;
    os << manifest.string() << ": " << messages_.size()
       << " invalid record(s)";
    for (const std::string& m : messages_) os << "\n  " << m;
    throw ValidationError(os.str());
  }

 private:
  std::vector<std::string> messages_;
};

// Memoizes decoded feature files: every view of a sample usually shares one.
class FeatureCache {
 public:
  const FeatureRows& get(const fs::path& path) {
    auto it = cache_.find(path.string());
    if (it != cache_.end()) return it->second;
    FeatureRows rows = decode_features(read_file(path), path.string());
    return cache_.emplace(path.string(), std::move(rows)).first->second;
  }

 private:
  std::map<std::string, FeatureRows> cache_;
};

std::string required_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ValidationError(std::string("missing or non-string field '") + key +
                          "'");
  }
  std::string s = it->get<std::string>();
  if (s.empty()) throw ValidationError(std::string("empty field '") + key + "'");
  return s;
}

ViewRecord parse_view(const json& v, std::size_t dim, const fs::path& base,
                      FeatureCache& features) {
  if (!v.is_object()) throw ValidationError("view entry is not an object");
  auto angle_it = v.find("angle");
  if (angle_it == v.end() || !angle_it->is_number_integer()) {
    throw ValidationError("view missing integer 'angle'");
  }
  ViewRecord view;
  view.angle_deg = angle_it->get<int>();
  try {
    angle_bucket(view.angle_deg);
  } catch (const ContractError&) {
    throw ValidationError("angle " + std::to_string(view.angle_deg) +
                          " is not a multiple of 12 in [0, 348]");
  }
  view.kind = parse_view_kind(required_string(v, "kind"));
  const bool has_feature = v.contains("feature_file");
  const bool has_image = v.contains("image_file");
  if (has_feature == has_image) {
    throw ValidationError(
        "view needs exactly one of 'feature_file' or 'image_file'");
  }
  if (has_feature) {
    const fs::path file = base / required_string(v, "feature_file");
    std::size_t row = 0;
    if (auto r = v.find("row"); r != v.end()) {
      if (!r->is_number_unsigned()) {
        throw ValidationError("view 'row' must be a non-negative integer");
      }
      row = r->get<std::size_t>();
    }
    const FeatureRows& rows = features.get(file);
    if (rows.dim != dim) {
      throw ValidationError(file.string() + ": feature dim " +
                            std::to_string(rows.dim) +
                            " does not match manifest dim " +
                            std::to_string(dim));
    }
    if (row >= rows.count) {
      throw ValidationError(file.string() + ": row " + std::to_string(row) +
                            " out of range (" + std::to_string(rows.count) +
                            " rows)");
    }
    view.payload = PrecomputedFeature(
        rows.values.begin() + static_cast<std::ptrdiff_t>(row * dim),
        rows.values.begin() + static_cast<std::ptrdiff_t>((row + 1) * dim));
  } else {
    const fs::path file = base / required_string(v, "image_file");
    view.payload = decode_raster(read_file(file), file.string());
  }
  return view;
}

}  // namespace

Dataset load_manifest(const fs::path& path) {
  const fs::path manifest =
      fs::is_directory(path) ? path / kManifestFileName : path;
  const fs::path base = manifest.parent_path();
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open manifest " + manifest.string());

  Dataset dataset;
  ErrorLog errors;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::set<std::string> ids;
  FeatureCache features;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      errors.add(where, std::string("malformed JSON: ") + e.what());
      continue;
    }
    if (!have_header) {
      have_header = true;
      if (!record.is_object() || record.value("version", "") != kManifestVersion) {
        errors.add(where, "header must carry version \"jm3d-1\"");
        errors.raise(manifest);
      }
      auto dim = record.find("dim");
      if (dim == record.end() || !dim->is_number_unsigned() ||
          dim->get<std::size_t>() == 0) {
        errors.add(where, "header must carry a positive integer 'dim'");
        errors.raise(manifest);
      }
      dataset.version = std::string(kManifestVersion);
      dataset.dim = dim->get<std::size_t>();
      continue;
    }
    std::string id = "?";
    try {
      if (!record.is_object()) throw ValidationError("record is not an object");
      id = required_string(record, "id");
      TripletSample sample;
      sample.id = id;
      if (!ids.insert(id).second) throw ValidationError("duplicate id");
      sample.parent = required_string(record, "parent");
      auto sub = record.find("sub");
      if (sub != record.end() && !sub->is_null()) {
        if (!sub->is_string() || sub->get<std::string>().empty()) {
          throw ValidationError("'sub' must be a non-empty string or null");
        }
        sample.sub = sub->get<std::string>();
      }
      const fs::path cloud_file = base / required_string(record, "cloud_file");
      sample.cloud = decode_cloud(read_file(cloud_file), cloud_file.string());
      auto views = record.find("views");
      if (views == record.end() || !views->is_array() || views->empty()) {
        throw ValidationError("'views' must be a non-empty array");
      }
      for (std::size_t k = 0; k < views->size(); ++k) {
        try {
          sample.views.push_back(
              parse_view((*views)[k], dataset.dim, base, features));
        } catch (const ValidationError& e) {
          throw ValidationError("view " + std::to_string(k) + ": " + e.what());
        }
      }
      dataset.samples.push_back(std::move(sample));
    } catch (const ValidationError& e) {
      errors.add(where + " (id " + id + ")", e.what());
    }
  }
  if (!have_header) errors.add("line 1", "missing header");
  if (!errors.empty()) errors.raise(manifest);
  return dataset;
}

void save_dataset(const Dataset& dataset, const fs::path& dir) {
  fs::create_directories(dir);
  std::string manifest =
      json{{"version", kManifestVersion}, {"dim", dataset.dim}}.dump() + "\n";
  for (const TripletSample& s : dataset.samples) {
    const std::string cloud_rel = "clouds/" + s.id + ".bin";
    write_file(dir / cloud_rel, encode_cloud(s.cloud));

    const std::string feature_rel = "features/" + s.id + ".bin";
    std::vector<double> rows;
    json views = json::array();
    for (std::size_t k = 0; k < s.views.size(); ++k) {
      const ViewRecord& v = s.views[k];
      json entry{{"angle", v.angle_deg}, {"kind", view_kind_name(v.kind)}};
      if (const auto* f = std::get_if<PrecomputedFeature>(&v.payload)) {
        if (f->size() != dataset.dim) {
          throw ValidationError("sample " + s.id + ": feature dim " +
                                std::to_string(f->size()) + " != " +
                                std::to_string(dataset.dim));
        }
        entry["feature_file"] = feature_rel;
        entry["row"] = rows.size() / dataset.dim;
        rows.insert(rows.end(), f->begin(), f->end());
      } else if (const auto* img = std::get_if<Raster>(&v.payload)) {
        const std::string image_rel =
            "images/" + s.id + "_" + std::to_string(k) + ".img";
        write_file(dir / image_rel, encode_raster(*img));
        entry["image_file"] = image_rel;
      } else {
        throw ValidationError("sample " + s.id + ": view " +
                              std::to_string(k) + " has no payload");
      }
      views.push_back(std::move(entry));
    }
    if (!rows.empty()) {
      write_file(dir / feature_rel, encode_features(dataset.dim, rows));
    }
    json record{{"id", s.id},
                {"parent", s.parent},
                {"sub", s.sub ? json(*s.sub) : json(nullptr)},
                {"cloud_file", cloud_rel},
                {"views", std::move(views)}};
    manifest += record.dump() + "\n";
  }
  write_file(dir / kManifestFileName, manifest);
}

}  // namespace jm3d::dataset
