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

#include "jm3d/evaluation/zero_shot.h"

#include <algorithm>
#include <numeric>

#include "jm3d/common/errors.h"
#include "jm3d/encoders/view_embedding.h"
#include "jm3d/evaluation/eval_sets.h"

namespace jm3d::evaluation {
namespace ad = autodiff;
namespace {

std::vector<double> similarities(std::span<const double> query, const ad::Tensor& rows) {
  if (rows.rank() != 2 || rows.cols() != query.size()) {
    throw DimensionError("query width " + std::to_string(query.size()) +
                         " vs rows " + ad::shape_string(rows.shape()));
  }
  std::vector<double> s(rows.rows());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = encoders::cosine(query, rows.row(i));
  return s;
}

}  // namespace

PromptTemplate::PromptTemplate(std::string pattern) : pattern_(std::move(pattern)) {
  const auto first = pattern_.find("[CLASS]");
  if (first == std::string::npos || pattern_.find("[CLASS]", first + 1) != std::string::npos) {
    throw ConfigError("prompt template needs exactly one [CLASS] slot: " + pattern_);
  }
}

std::string PromptTemplate::instantiate(std::string_view class_name) const {
  return training::make_prompt(class_name, pattern_);
}

encoders::FeatureBatch build_label_features(std::span<const std::string> classes,
                                            const PromptTemplate& prompt,
                                            const encoders::FrozenTextEncoder& text) {
  if (classes.empty()) throw ValidationError("empty class list");
  check_class_list(classes);
  std::vector<encoders::FeatureVec> rows;
  for (const auto& c : classes) {
    rows.push_back(encoders::normalized(text.encode(prompt.instantiate(c))));
  }
  return encoders::stack(rows);
}

std::vector<std::size_t> zero_shot_topk(std::span<const double> query,
                                        const ad::Tensor& labels, std::size_t k) {
  const auto sim = similarities(query, labels);
  if (k == 0 || k > sim.size()) {
    throw ContractError("zero_shot_topk: k=" + std::to_string(k) + " with " +
                        std::to_string(sim.size()) + " classes");
  }
  std::vector<std::size_t> order(sim.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sim[a] > sim[b]; });
  order.resize(k);
  return order;
}

double accuracy_topk(std::span<const std::vector<std::size_t>> rankings,
                     std::span<const std::size_t> gold, std::size_t k) {
  if (rankings.size() != gold.size()) {
    throw DimensionError("accuracy_topk: " + std::to_string(rankings.size()) +
                         " rankings for " + std::to_string(gold.size()) + " labels");
  }
  if (gold.empty()) throw ContractError("accuracy_topk: no samples");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto& r = rankings[i];
    const auto end = r.begin() + static_cast<std::ptrdiff_t>(std::min(k, r.size()));
    if (std::find(r.begin(), end, gold[i]) != end) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

std::vector<std::string> retrieve_by_image(std::span<const double> query,
                                           const ad::Tensor& gallery,
                                           std::span<const std::string> ids,
                                           std::size_t k) {
  const auto sim = similarities(query, gallery);
  if (ids.size() != sim.size()) {
    throw DimensionError("retrieve_by_image: ids and gallery rows differ");
  }
  if (k == 0 || k > sim.size()) {
    throw ContractError("retrieve_by_image: k=" + std::to_string(k) + " with " +
                        std::to_string(sim.size()) + " items");
  }
  std::vector<std::size_t> order(sim.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sim[a] != sim[b]) return sim[a] > sim[b];
    return ids[a] < ids[b];
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(ids[order[i]]);
  return out;
}

std::vector<std::string> used_leaf_names(const dataset::Dataset& data,
                                         const dataset::CategoryTree& tree) {
  std::vector<bool> used(tree.sub_count(), false);
  for (const auto& s : data.samples) used[dataset::resolve_label(s, tree).sub] = true;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i]) out.push_back(tree.leaf(i).name);
  }
  return out;
}

std::optional<std::size_t> gold_class(const dataset::TripletSample& sample,
                                      std::span<const std::string> classes) {
  auto find = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(classes.begin(), classes.end(), name);
    if (it == classes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - classes.begin());
  };
  if (sample.sub) {
    if (auto i = find(*sample.sub)) return i;
  }
  return find(sample.parent);
}

ZeroShotResult evaluate_zero_shot(const training::Model& model,
                                  const dataset::Dataset& data,
                                  std::span<const std::size_t> indices,
                                  std::span<const std::string> classes,
                                  const PromptTemplate& prompt,
                                  std::span<const std::size_t> ks) {
  if (classes.size() < 2) throw ValidationError("zero-shot needs at least two classes");
  const auto labels = build_label_features(classes, prompt, model.text_encoder());
  std::size_t kmax = 0;
  for (std::size_t k : ks) kmax = std::max(kmax, k);
  if (ks.empty() || kmax > classes.size()) {
    throw ContractError("zero-shot: top-k exceeds the class count");
  }
  std::vector<std::vector<std::size_t>> rankings;
  std::vector<std::size_t> gold;
  ZeroShotResult r;
  for (std::size_t index : indices) {
    const auto& s = data.samples.at(index);
    const auto g = gold_class(s, classes);
    if (!g) {
      ++r.skipped;
      continue;
    }
    const auto feature = model.encode_cloud(s.cloud);
    rankings.push_back(zero_shot_topk(feature.values, labels.rows, kmax));
    gold.push_back(*g);
  }
  r.evaluated = gold.size();
  if (gold.empty()) throw ValidationError("zero-shot: no sample matches the class list");
  for (std::size_t k : ks) {
    r.ks.push_back(k);
    r.accuracy.push_back(accuracy_topk(rankings, gold, k));
  }
  return r;
}

RetrievalResult evaluate_retrieval(const training::Model& model,
                                   const dataset::Dataset& data,
                                   const dataset::CategoryTree& tree,
                                   std::span<const std::size_t> indices) {
  if (indices.empty()) throw ValidationError("retrieval: no samples");
  std::vector<encoders::FeatureVec> clouds;
  std::vector<std::string> ids;
  std::vector<std::size_t> leaf_of;
  for (std::size_t index : indices) {
    const auto& s = data.samples.at(index);
    clouds.push_back(model.encode_cloud(s.cloud));
    ids.push_back(s.id);
    leaf_of.push_back(dataset::resolve_label(s, tree).sub);
  }
  const auto gallery = encoders::stack(clouds);
  RetrievalResult r;
  std::size_t hits = 0;
  for (std::size_t q = 0; q < indices.size(); ++q) {
    const auto& s = data.samples.at(indices[q]);
    const auto& view = s.views.front();
    const auto f = encoders::embed_view(model.image_encoder().encode(view),
                                        view.angle_deg, model.tables());
    const auto top = retrieve_by_image(f.values, gallery.rows, ids, 1);
    const auto pos = static_cast<std::size_t>(
        std::find(ids.begin(), ids.end(), top[0]) - ids.begin());
    if (leaf_of[pos] == leaf_of[q]) ++hits;
  }
  r.queries = indices.size();
  r.top1_class_accuracy = static_cast<double>(hits) / static_cast<double>(r.queries);
  return r;
}

}  // namespace jm3d::evaluation
