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

#ifndef JM3D_COMMON_VERSION_H_
#define JM3D_COMMON_VERSION_H_

namespace jm3d {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace jm3d

#endif  // JM3D_COMMON_VERSION_H_
