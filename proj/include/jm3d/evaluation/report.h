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

#ifndef JM3D_EVALUATION_REPORT_H_
#define JM3D_EVALUATION_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace jm3d::evaluation {

struct ReportHeader {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
};

struct MetricRecord {
  std::string set;
  std::size_t k = 1;
  double accuracy = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::string checkpoint;
};

// JSON lines: a header object {"type":"header","version",...} followed by one
// {"type":"metric",...} object per record. Keys are sorted.
std::string report_jsonl(const ReportHeader& header,
                         std::span<const MetricRecord> records);

// Left-aligned plain-text table with a dashed rule under the header row.
std::string format_table(const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows);

// The metric records as a table (set, k, accuracy, n).
std::string metric_table(std::span<const MetricRecord> records);

// Fixed-point rendering with `digits` decimals.
std::string fixed(double value, int digits);

}  // namespace jm3d::evaluation

#endif  // JM3D_EVALUATION_REPORT_H_
