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

#ifndef JM3D_DATASET_VIEW_SAMPLER_H_
#define JM3D_DATASET_VIEW_SAMPLER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "jm3d/common/random.h"
#include "jm3d/dataset/triplet.h"

namespace jm3d::dataset {

// Windowed view sampling.
//
// A "window" is a set of `count` distinct records (by position) whose angles
// are pairwise closer than `omega_deg` in circular distance. The draw is
// uniform over every such set. Sets are enumerated exhaustively with
// pairwise-compatibility pruning; with 60 candidates and omega = 60 this is a
// few thousand sets, cheap enough to redo per draw.
//
// Throws SamplingError when count == 0, count exceeds the candidates, or no
// window exists. Returned positions are ascending.
std::vector<std::size_t> sample_window_indices(std::span<const int> angles_deg,
                                               std::size_t count,
                                               double omega_deg, Rng& rng);

// Number of feasible windows (the support of sample_window_indices).
std::size_t count_windows(std::span<const int> angles_deg, std::size_t count,
                          double omega_deg);

// `count` distinct positions out of `n`, uniformly, with no angular
// constraint. Ascending.
std::vector<std::size_t> sample_random_indices(std::size_t n, std::size_t count,
                                               Rng& rng);

std::vector<ViewRecord> sample_within_window(std::span<const ViewRecord> views,
                                             std::size_t count, double omega_deg,
                                             Rng& rng);

}  // namespace jm3d::dataset

#endif  // JM3D_DATASET_VIEW_SAMPLER_H_
