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

#include "jm3d/cli/ablation.h"

#include "jm3d/common/errors.h"
#include "jm3d/dataset/category_tree.h"
#include "jm3d/dataset/split.h"
#include "jm3d/evaluation/report.h"
#include "jm3d/evaluation/zero_shot.h"
#include "jm3d/training/trainer.h"

namespace jm3d::cli {
namespace {

struct Switch {
  const char* axis;
  const char* variant;
  bool training::TrainConfig::*flag;
};

constexpr Switch kSwitches[] = {
    {"cis", "no-cis", &training::TrainConfig::cis},
    {"embeddings", "no-embeddings", &training::TrainConfig::embeddings},
    {"within-view", "no-within-view", &training::TrainConfig::within_view},
    {"htt", "no-htt", &training::TrainConfig::htt},
    {"jma", "no-jma", &training::TrainConfig::jma},
};

std::string on_off(bool v) { return v ? "on" : "off"; }

}  // namespace

std::vector<AblationVariant> ablation_variants(const training::TrainConfig& base,
                                               std::string_view axis) {
  std::vector<AblationVariant> out{{"full", base}};
  bool matched = false;
  for (const Switch& s : kSwitches) {
    if (axis != "all" && axis != s.axis) continue;
    matched = true;
    AblationVariant v{s.variant, base};
    v.config.*s.flag = false;
    out.push_back(std::move(v));
  }
  if (!matched) {
    throw ConfigError("unknown ablation axis '" + std::string(axis) +
                      "' (expected cis, embeddings, within-view, htt, jma or all)");
  }
  return out;
}

std::vector<AblationRow> run_ablation(
    std::span<const AblationVariant> variants, const dataset::Dataset& data,
    std::span<const std::uint64_t> seeds,
    const std::function<void(const std::string&, std::uint64_t, double)>& progress) {
  if (seeds.empty()) throw ConfigError("ablation needs at least one seed");
  const auto tree = dataset::CategoryTree::from_samples(data.samples);
  const auto classes = evaluation::used_leaf_names(data, tree);
  const std::size_t ks[] = {1};
  std::vector<AblationRow> rows;
  for (const auto& v : variants) {
    AblationRow row{v.name, {}, {}, 0.0};
    for (std::uint64_t seed : seeds) {
      training::TrainConfig c = v.config;
      c.seed = seed;
      const auto split = dataset::split_holdout(data, tree, c.holdout, seed);
      if (split.test.empty()) throw ConfigError("ablation: holdout split is empty");
      const auto result = training::train(c, data, tree, split.train);
      const training::Model model(c, result.checkpoint.dim, result.checkpoint.parents,
                                  result.checkpoint.params);
      const auto zs = evaluation::evaluate_zero_shot(model, data, split.test, classes,
                                                     evaluation::PromptTemplate(), ks);
      row.top1.push_back(zs.accuracy[0]);
      row.final_loss.push_back(result.epochs.back().mean_loss);
      if (progress) progress(v.name, seed, zs.accuracy[0]);
    }
    double sum = 0.0;
    for (double a : row.top1) sum += a;
    row.mean_top1 = sum / static_cast<double>(row.top1.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string ablation_table(std::span<const AblationVariant> variants,
                           std::span<const AblationRow> rows) {
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& c = variants[i].config;
    double loss = 0.0;
    for (double l : rows[i].final_loss) loss += l;
    loss /= static_cast<double>(rows[i].final_loss.size());
    cells.push_back({rows[i].name, on_off(c.cis), on_off(c.embeddings),
                     on_off(c.within_view), on_off(c.htt), on_off(c.jma),
                     std::to_string(rows[i].top1.size()),
                     evaluation::fixed(100.0 * rows[i].mean_top1, 2),
                     evaluation::fixed(loss, 4)});
  }
  return evaluation::format_table({"variant", "cis", "embed", "within", "htt", "jma",
                                   "seeds", "top1%", "final_loss"},
                                  cells);
}

}  // namespace jm3d::cli
