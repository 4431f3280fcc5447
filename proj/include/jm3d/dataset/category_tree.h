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

#ifndef JM3D_DATASET_CATEGORY_TREE_H_
#define JM3D_DATASET_CATEGORY_TREE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jm3d/dataset/triplet.h"

namespace jm3d::dataset {

// Two-level label hierarchy: parent categories, each owning subcategory
// leaves.
//
// Every parent owns a fallback leaf carrying the parent's own name; samples
// whose subcategory is missing resolve to it. When a real subcategory has the
// parent's name the two are the same leaf.
//
// Indices are dense. Parents are numbered in lexicographic order; leaves are
// numbered parent by parent, lexicographically within each parent.
class CategoryTree {
 public:
  struct Leaf {
    std::string name;
    std::size_t parent = 0;
    // True for the per-parent leaf that also receives unlabeled samples.
    bool fallback = false;

    friend bool operator==(const Leaf&, const Leaf&) = default;
  };

  CategoryTree() = default;

  // Builds the tree from (parent, optional sub) pairs. Throws LabelError for
  // empty names.
  static CategoryTree build(
      std::span<const std::pair<std::string, std::optional<std::string>>> labels);
  static CategoryTree from_samples(std::span<const TripletSample> samples);

  std::size_t parent_count() const { return parents_.size(); }
  std::size_t sub_count() const { return leaves_.size(); }

  const std::vector<std::string>& parents() const { return parents_; }
  const std::vector<Leaf>& leaves() const { return leaves_; }
  const std::string& parent_name(std::size_t index) const;
  const Leaf& leaf(std::size_t index) const;

  std::optional<std::size_t> parent_index(const std::string& parent) const;
  std::optional<std::size_t> sub_index(const std::string& parent,
                                       const std::string& sub) const;
  std::size_t fallback_leaf(std::size_t parent_index) const;
  // Leaf indices owned by a parent, in index order.
  std::vector<std::size_t> children(std::size_t parent_index) const;

  friend bool operator==(const CategoryTree&, const CategoryTree&) = default;

 private:
  std::vector<std::string> parents_;
  std::vector<Leaf> leaves_;
  std::map<std::string, std::size_t> parent_lookup_;
  std::map<std::pair<std::size_t, std::string>, std::size_t> leaf_lookup_;
  std::vector<std::size_t> fallback_;
};

struct LabelPair {
  std::size_t parent = 0;
  std::size_t sub = 0;

  friend bool operator==(const LabelPair&, const LabelPair&) = default;
};

// Resolves a sample's (parent, sub) names to indices. A missing or
// unregistered subcategory resolves to the parent's fallback leaf; an unknown
// parent throws LabelError.
LabelPair resolve_label(const TripletSample& sample, const CategoryTree& tree);

}  // namespace jm3d::dataset

#endif  // JM3D_DATASET_CATEGORY_TREE_H_
