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

#ifndef JM3D_CLI_ABLATION_H_
#define JM3D_CLI_ABLATION_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jm3d/dataset/triplet.h"
#include "jm3d/training/config.h"

namespace jm3d::cli {

struct AblationVariant {
  std::string name;
  training::TrainConfig config;
};

// "full" plus the variant(s) for an axis: cis, embeddings, within-view, htt,
// jma, or all (every single switch turned off in turn). Throws ConfigError
// for an unknown axis.
std::vector<AblationVariant> ablation_variants(const training::TrainConfig& base,
                                               std::string_view axis);

struct AblationRow {
  std::string name;
  std::vector<double> top1;        // held-out zero-shot top-1, per seed
  std::vector<double> final_loss;  // last-epoch mean loss, per seed
  double mean_top1 = 0.0;
};

// Trains and evaluates every variant once per seed (the seed replaces
// config.seed, which also drives the holdout split). Zero-shot classes are
// the subcategories present in the data.
std::vector<AblationRow> run_ablation(
    std::span<const AblationVariant> variants, const dataset::Dataset& data,
    std::span<const std::uint64_t> seeds,
    const std::function<void(const std::string&, std::uint64_t, double)>& progress = {});

std::string ablation_table(std::span<const AblationVariant> variants,
                           std::span<const AblationRow> rows);

}  // namespace jm3d::cli

#endif  // JM3D_CLI_ABLATION_H_
