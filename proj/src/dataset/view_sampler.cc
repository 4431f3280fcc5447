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

#include "jm3d/dataset/view_sampler.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "jm3d/common/errors.h"

namespace jm3d::dataset {
namespace {

// Calls visit(chosen) for every feasible window in lexicographic order of
// positions.
void enumerate_windows(std::span<const int> angles, std::size_t count,
                       double omega,
                       const std::function<void(std::span<const std::size_t>)>& visit) {
  const std::size_t n = angles.size();
  std::vector<char> compat(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      compat[i * n + j] = circular_distance(angles[i], angles[j]) < omega;
    }
  }
  std::vector<std::size_t> chosen;
  chosen.reserve(count);
  std::function<void(std::size_t)> extend = [&](std::size_t next) {
    if (chosen.size() == count) {
      visit(chosen);
      return;
    }
    // Not enough positions left to complete the window.
    for (std::size_t i = next; i + (count - chosen.size()) <= n; ++i) {
      bool ok = true;
      for (std::size_t c : chosen) {
        if (!compat[c * n + i]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(i);
      extend(i + 1);
      chosen.pop_back();
    }
  };
  extend(0);
}

void check_request(std::size_t n, std::size_t count) {
  if (count == 0) throw SamplingError("view sampling: count must be >= 1");
  if (count > n) {
    throw SamplingError("view sampling: " + std::to_string(count) +
                        " views requested from " + std::to_string(n) +
                        " candidates");
  }
}

}  // namespace

std::size_t count_windows(std::span<const int> angles_deg, std::size_t count,
                          double omega_deg) {
  check_request(angles_deg.size(), count);
  std::size_t total = 0;
  enumerate_windows(angles_deg, count, omega_deg,
                    [&](std::span<const std::size_t>) { ++total; });
  return total;
}

std::vector<std::size_t> sample_window_indices(std::span<const int> angles_deg,
                                               std::size_t count,
                                               double omega_deg, Rng& rng) {
  check_request(angles_deg.size(), count);
  std::vector<std::size_t> flat;
  enumerate_windows(angles_deg, count, omega_deg,
                    [&](std::span<const std::size_t> w) {
                      flat.insert(flat.end(), w.begin(), w.end());
                    });
  if (flat.empty()) {
    throw SamplingError("view sampling: no " + std::to_string(count) +
                        "-view window narrower than " +
                        std::to_string(omega_deg) + " degrees");
  }
  const std::size_t pick = rng.index(flat.size() / count);
  return std::vector<std::size_t>(flat.begin() + pick * count,
                                  flat.begin() + (pick + 1) * count);
}

std::vector<std::size_t> sample_random_indices(std::size_t n, std::size_t count,
                                               Rng& rng) {
  check_request(n, count);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(order[i], order[i + rng.index(n - i)]);
  }
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<ViewRecord> sample_within_window(std::span<const ViewRecord> views,
                                             std::size_t count, double omega_deg,
                                             Rng& rng) {
  std::vector<int> angles;
  angles.reserve(views.size());
  for (const ViewRecord& v : views) angles.push_back(v.angle_deg);
  std::vector<ViewRecord> out;
  for (std::size_t i : sample_window_indices(angles, count, omega_deg, rng)) {
    out.push_back(views[i]);
  }
  return out;
}

}  // namespace jm3d::dataset
