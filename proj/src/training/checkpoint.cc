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

#include "jm3d/training/checkpoint.h"

#include <string_view>

#include "jm3d/common/binary_io.h"
#include "jm3d/common/errors.h"

namespace jm3d::training {
namespace ad = autodiff;
namespace {

constexpr std::string_view kMagic = "JM3DCKPT";

void write_values(ByteWriter& w, const ad::Tensor& t) {
  for (double v : t.values()) w.f64(v);
}

ad::Tensor read_tensor(ByteReader& r, ad::Shape shape) {
  std::vector<double> values(ad::shape_size(shape));
  for (double& v : values) v = r.f64();
  return ad::Tensor(std::move(shape), std::move(values));
}

TrainConfig parse_echo(const std::string& echo) {
  TrainConfig config;
  std::string_view rest = echo;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    const std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view() : rest.substr(nl + 1);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("checkpoint config echo: malformed line '" +
                        std::string(line) + "'");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
  return config;
}

}  // namespace

std::string encode_checkpoint(const Checkpoint& c) {
  ByteWriter w;
  w.bytes(kMagic);
  w.u32(kCheckpointVersion);
  w.str(config_echo(c.config));
  w.u64(c.dim);
  w.u64(c.parents);
  w.u64(c.epoch);
  w.u32(static_cast<std::uint32_t>(c.params.entries().size()));
  for (const auto& [name, entry] : c.params.entries()) {
    w.str(name);
    w.u32(entry.no_decay ? 1 : 0);
    w.u32(static_cast<std::uint32_t>(entry.value.rank()));
    for (std::size_t d : entry.value.shape()) w.u64(d);
    write_values(w, entry.value);
  }
  w.u64(c.optimizer.step);
  w.u32(static_cast<std::uint32_t>(c.optimizer.m.size()));
  for (const auto& [name, m] : c.optimizer.m) {
    const auto v = c.optimizer.v.find(name);
    if (v == c.optimizer.v.end() || v->second.shape() != m.shape() ||
        !c.params.contains(name) || c.params.value(name).shape() != m.shape()) {
      throw ContractError("checkpoint: inconsistent optimizer state for " + name);
    }
    w.str(name);
    write_values(w, m);
    write_values(w, v->second);
  }
  if (c.optimizer.v.size() != c.optimizer.m.size()) {
    throw ContractError("checkpoint: optimizer moments differ in size");
  }
  return w.buffer();
}

Checkpoint decode_checkpoint(std::string_view bytes, const std::string& source) {
  ByteReader r(bytes, source);
  if (r.bytes(kMagic.size()) != kMagic) throw IoError(source + ": not a checkpoint");
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion) {
    throw IoError(source + ": unsupported checkpoint version " +
                  std::to_string(version));
  }
  Checkpoint c;
  c.config = parse_echo(r.str());
  c.dim = r.u64();
  c.parents = r.u64();
  c.epoch = r.u64();
  const std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string name = r.str();
    const bool no_decay = r.u32() != 0;
    const std::uint32_t rank = r.u32();
    if (rank == 0 || rank > 8) throw IoError(source + ": bad rank for " + name);
    ad::Shape shape(rank);
    for (auto& d : shape) {
      d = r.u64();
      if (d == 0 || d > r.remaining()) throw IoError(source + ": bad shape for " + name);
    }
    if (ad::shape_size(shape) * 8 > r.remaining()) {
      throw IoError(source + ": truncated values for " + name);
    }
    c.params.add(name, read_tensor(r, shape), no_decay);
  }
  c.optimizer.step = r.u64();
  const std::uint32_t moments = r.u32();
  for (std::uint32_t i = 0; i < moments; ++i) {
    std::string name = r.str();
    if (!c.params.contains(name)) {
      throw IoError(source + ": optimizer state for unknown parameter " + name);
    }
    const ad::Shape shape = c.params.value(name).shape();
    c.optimizer.m.emplace(name, read_tensor(r, shape));
    c.optimizer.v.emplace(name, read_tensor(r, shape));
  }
  if (!r.at_end()) throw IoError(source + ": trailing bytes");
  return c;
}

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
  write_file(path, encode_checkpoint(checkpoint));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(read_file(path), path.string());
}

}  // namespace jm3d::training
