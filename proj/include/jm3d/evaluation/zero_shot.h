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

#ifndef JM3D_EVALUATION_ZERO_SHOT_H_
#define JM3D_EVALUATION_ZERO_SHOT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jm3d/autodiff/tensor.h"
#include "jm3d/dataset/category_tree.h"
#include "jm3d/dataset/triplet.h"
#include "jm3d/encoders/features.h"
#include "jm3d/encoders/frozen.h"
#include "jm3d/training/model.h"

namespace jm3d::evaluation {

// Prompt pattern with exactly one [CLASS] slot.
class PromptTemplate {
 public:
  explicit PromptTemplate(std::string pattern = std::string(training::kPromptTemplate));
  std::string instantiate(std::string_view class_name) const;
  const std::string& pattern() const { return pattern_; }

 private:
  std::string pattern_;
};

// One unit-norm text feature per class, in class order. Throws
// ValidationError for an empty or duplicated class list.
encoders::FeatureBatch build_label_features(std::span<const std::string> classes,
                                            const PromptTemplate& prompt,
                                            const encoders::FrozenTextEncoder& text);

// Indices of the k label rows most cosine-similar to the query, best first;
// ties go to the lower index. Throws ContractError for k == 0 or k > K.
std::vector<std::size_t> zero_shot_topk(std::span<const double> query,
                                        const autodiff::Tensor& labels, std::size_t k);

// Fraction of rankings whose gold index is among the first k entries.
double accuracy_topk(std::span<const std::vector<std::size_t>> rankings,
                     std::span<const std::size_t> gold, std::size_t k);

// Ids of the k gallery rows most cosine-similar to the query; ties go to the
// lexicographically smaller id.
std::vector<std::string> retrieve_by_image(std::span<const double> query,
                                           const autodiff::Tensor& gallery,
                                           std::span<const std::string> ids,
                                           std::size_t k);

// Names of the leaves that samples actually resolve to, in tree order.
std::vector<std::string> used_leaf_names(const dataset::Dataset& data,
                                         const dataset::CategoryTree& tree);

// The class a sample is scored against: its subcategory when listed, else
// its parent when listed, else none (the sample is skipped).
std::optional<std::size_t> gold_class(const dataset::TripletSample& sample,
                                      std::span<const std::string> classes);

struct ZeroShotResult {
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::vector<std::size_t> ks;
  std::vector<double> accuracy;  // aligned with ks
};

ZeroShotResult evaluate_zero_shot(const training::Model& model,
                                  const dataset::Dataset& data,
                                  std::span<const std::size_t> indices,
                                  std::span<const std::string> classes,
                                  const PromptTemplate& prompt,
                                  std::span<const std::size_t> ks);

struct RetrievalResult {
  std::size_t queries = 0;
  double top1_class_accuracy = 0.0;
};

// Queries with the embedded first view of each selected sample against the
// point features of the same samples; a hit is a rank-1 cloud of the same
// subcategory.
RetrievalResult evaluate_retrieval(const training::Model& model,
                                   const dataset::Dataset& data,
                                   const dataset::CategoryTree& tree,
                                   std::span<const std::size_t> indices);

}  // namespace jm3d::evaluation

#endif  // JM3D_EVALUATION_ZERO_SHOT_H_
