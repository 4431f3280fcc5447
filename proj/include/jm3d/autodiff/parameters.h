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

#ifndef JM3D_AUTODIFF_PARAMETERS_H_
#define JM3D_AUTODIFF_PARAMETERS_H_

#include <map>
#include <string>
#include <vector>

#include "jm3d/autodiff/tape.h"
#include "jm3d/autodiff/tensor.h"

namespace jm3d::autodiff {

// Named, persistent trainable values. Iteration order is lexicographic by
// name, which fixes the order of optimizer updates and checkpoint records.
class ParameterStore {
 public:
  struct Entry {
    Tensor value;
    // Excluded from decoupled weight decay (biases, temperature).
    bool no_decay = false;
  };

  void add(const std::string& name, Tensor value, bool no_decay = false);

  bool contains(const std::string& name) const {
    return entries_.count(name) != 0;
  }
  const Tensor& value(const std::string& name) const;
  Tensor& mutable_value(const std::string& name);
  const Entry& entry(const std::string& name) const;

  // Registers the parameter on `tape` (idempotent per tape).
  Var bind(Tape& tape, const std::string& name) const {
    return tape.parameter(name, value(name));
  }

  std::vector<std::string> names() const;
  const std::map<std::string, Entry>& entries() const { return entries_; }
  std::size_t total_size() const;

  friend bool operator==(const ParameterStore& a, const ParameterStore& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (auto ia = a.entries_.begin(), ib = b.entries_.begin();
         ia != a.entries_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || ia->second.value != ib->second.value ||
          ia->second.no_decay != ib->second.no_decay) {
        return false;
      }
    }
    return true;
  }

 private:
  std::map<std::string, Entry> entries_;
};

}  // namespace jm3d::autodiff

#endif  // JM3D_AUTODIFF_PARAMETERS_H_
