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

#include "jm3d/evaluation/report.h"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "jm3d/common/errors.h"
#include "jm3d/common/version.h"

namespace jm3d::evaluation {

std::string report_jsonl(const ReportHeader& header,
                         std::span<const MetricRecord> records) {
  std::string out;
  nlohmann::json h = {{"type", "header"},
                      {"version", kVersion},
                      {"command", header.command},
                      {"config_hash", header.config_hash},
                      {"seed", header.seed}};
  out += h.dump() + "\n";
  for (const auto& r : records) {
    nlohmann::json m = {{"type", "metric"},         {"set", r.set},
                        {"k", r.k},                 {"accuracy", r.accuracy},
                        {"n_samples", r.n_samples}, {"seed", r.seed},
                        {"checkpoint", r.checkpoint}};
    out += m.dump() + "\n";
  }
  return out;
}

std::string format_table(const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  for (const auto& row : rows) {
    if (row.size() != columns.size()) {
      throw ContractError("format_table: row width differs from the header");
    }
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) s += "  ";
      s += cells[c];
      if (c + 1 < cells.size()) s.append(width[c] - cells[c].size(), ' ');
    }
    return s + "\n";
  };
  std::string out = line(columns);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  out.append(total + 2 * (width.empty() ? 0 : width.size() - 1), '-');
  out += "\n";
  for (const auto& row : rows) out += line(row);
  return out;
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string metric_table(std::span<const MetricRecord> records) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : records) {
    rows.push_back({r.set, "top-" + std::to_string(r.k), fixed(100.0 * r.accuracy, 2),
                    std::to_string(r.n_samples)});
  }
  return format_table({"set", "k", "accuracy%", "n"}, rows);
}

}  // namespace jm3d::evaluation
