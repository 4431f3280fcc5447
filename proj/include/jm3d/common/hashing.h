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

#ifndef JM3D_COMMON_HASHING_H_
#define JM3D_COMMON_HASHING_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace jm3d {

// 64-bit FNV-1a. Stable across platforms; used for token hashing, config
// fingerprints and the embedded class-list checksums.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

// Lowercase 16-digit hex rendering.
std::string hex64(std::uint64_t value);

}  // namespace jm3d

#endif  // JM3D_COMMON_HASHING_H_
