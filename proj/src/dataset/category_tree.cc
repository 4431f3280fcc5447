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

#include "jm3d/dataset/category_tree.h"

#include <set>

#include "jm3d/common/errors.h"

namespace jm3d::dataset {

CategoryTree CategoryTree::build(
    std::span<const std::pair<std::string, std::optional<std::string>>> labels) {
  std::map<std::string, std::set<std::string>> grouped;
  for (const auto& [parent, sub] : labels) {
    if (parent.empty()) throw LabelError("empty parent category name");
    if (sub && sub->empty()) {
      throw LabelError("empty subcategory name under '" + parent + "'");
    }
    auto& children = grouped[parent];
    children.insert(parent);  // fallback leaf
    if (sub) children.insert(*sub);
  }
  CategoryTree tree;
  for (const auto& [parent, children] : grouped) {
    const std::size_t p = tree.parents_.size();
    tree.parents_.push_back(parent);
    tree.parent_lookup_.emplace(parent, p);
    for (const std::string& child : children) {
      const std::size_t leaf = tree.leaves_.size();
      const bool fallback = child == parent;
      tree.leaves_.push_back(Leaf{child, p, fallback});
      tree.leaf_lookup_.emplace(std::make_pair(p, child), leaf);
      if (fallback) tree.fallback_.push_back(leaf);
    }
  }
  return tree;
}

CategoryTree CategoryTree::from_samples(std::span<const TripletSample> samples) {
  std::vector<std::pair<std::string, std::optional<std::string>>> labels;
  labels.reserve(samples.size());
  for (const TripletSample& s : samples) labels.emplace_back(s.parent, s.sub);
  return build(labels);
}

const std::string& CategoryTree::parent_name(std::size_t index) const {
  if (index >= parents_.size()) {
    throw LabelError("parent index " + std::to_string(index) + " out of range");
  }
  return parents_[index];
}

const CategoryTree::Leaf& CategoryTree::leaf(std::size_t index) const {
  if (index >= leaves_.size()) {
    throw LabelError("subcategory index " + std::to_string(index) +
                     " out of range");
  }
  return leaves_[index];
}

std::optional<std::size_t> CategoryTree::parent_index(
    const std::string& parent) const {
  auto it = parent_lookup_.find(parent);
  if (it == parent_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> CategoryTree::sub_index(const std::string& parent,
                                                   const std::string& sub) const {
  auto p = parent_index(parent);
  if (!p) return std::nullopt;
  auto it = leaf_lookup_.find(std::make_pair(*p, sub));
  if (it == leaf_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t CategoryTree::fallback_leaf(std::size_t parent_index) const {
  if (parent_index >= fallback_.size()) {
    throw LabelError("parent index " + std::to_string(parent_index) +
                     " out of range");
  }
  return fallback_[parent_index];
}

std::vector<std::size_t> CategoryTree::children(std::size_t parent_index) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    if (leaves_[i].parent == parent_index) out.push_back(i);
  }
  return out;
}

LabelPair resolve_label(const TripletSample& sample, const CategoryTree& tree) {
  auto parent = tree.parent_index(sample.parent);
  if (!parent) {
    throw LabelError("sample '" + sample.id + "': unknown parent category '" +
                     sample.parent + "'");
  }
  if (sample.sub) {
    if (auto sub = tree.sub_index(sample.parent, *sample.sub)) {
      return {*parent, *sub};
    }
  }
  return {*parent, tree.fallback_leaf(*parent)};
}

}  // namespace jm3d::dataset
