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

#include "jm3d/autodiff/parameters.h"

#include <utility>

#include "jm3d/common/errors.h"

namespace jm3d::autodiff {

void ParameterStore::add(const std::string& name, Tensor value, bool no_decay) {
  if (!entries_.emplace(name, Entry{std::move(value), no_decay}).second) {
    throw ContractError("parameter '" + name + "' registered twice");
  }
}

const ParameterStore::Entry& ParameterStore::entry(
    const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw ContractError("unknown parameter '" + name + "'");
  }
  return it->second;
}

const Tensor& ParameterStore::value(const std::string& name) const {
  return entry(name).value;
}

Tensor& ParameterStore::mutable_value(const std::string& name) {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw ContractError("unknown parameter '" + name + "'");
  }
  return it->second.value;
}

std::vector<std::string> ParameterStore::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, e] : entries_) out.push_back(name);
  return out;
}

std::size_t ParameterStore::total_size() const {
  std::size_t n = 0;
  for (const auto& [name, e] : entries_) n += e.value.size();
  return n;
}

}  // namespace jm3d::autodiff
