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

#include "jm3d/common/binary_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "jm3d/common/errors.h"

namespace jm3d {
namespace {

template <typename T>
void put_le(std::string& out, T value) {
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
      std::swap(raw[i], raw[sizeof(T) - 1 - i]);
    }
  }
  out.append(reinterpret_cast<const char*>(raw), sizeof(T));
}

template <typename T>
T get_le(const char* src) {
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, src, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
      std::swap(raw[i], raw[sizeof(T) - 1 - i]);
    }
  }
  T value;
  std::memcpy(&value, raw, sizeof(T));
  return value;
}

}  // namespace

void ByteWriter::u32(std::uint32_t v) { put_le(buffer_, v); }
void ByteWriter::u64(std::uint64_t v) { put_le(buffer_, v); }
void ByteWriter::f32(float v) { put_le(buffer_, v); }
void ByteWriter::f64(double v) { put_le(buffer_, v); }

void ByteWriter::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  buffer_.append(s);
}

void ByteReader::need(std::size_t n) const {
  if (remaining() < n) {
    throw IoError(source_ + ": truncated (need " + std::to_string(n) +
                  " bytes, " + std::to_string(remaining()) + " left)");
  }
}

std::uint32_t ByteReader::u32() {
  need(4);
  auto v = get_le<std::uint32_t>(data_.data() + pos_);
  pos_ += 4;
  return v;
}

std::uint64_t ByteReader::u64() {
  need(8);
  auto v = get_le<std::uint64_t>(data_.data() + pos_);
  pos_ += 8;
  return v;
}

float ByteReader::f32() {
  need(4);
  auto v = get_le<float>(data_.data() + pos_);
  pos_ += 4;
  return v;
}

double ByteReader::f64() {
  need(8);
  auto v = get_le<double>(data_.data() + pos_);
  pos_ += 8;
  return v;
}

std::string_view ByteReader::bytes(std::size_t n) {
  need(n);
  auto view = data_.substr(pos_, n);
  pos_ += n;
  return view;
}

std::string ByteReader::str() {
  const std::uint32_t n = u32();
  return std::string(bytes(n));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace jm3d
