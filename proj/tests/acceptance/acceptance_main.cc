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

// Runs the nine acceptance checks and prints one PASS/FAIL line for each.
// Exit status is the number of failed checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "desk.h"
#include "jm3d/alignment/jma.h"
#include "jm3d/alignment/losses.h"
#include "jm3d/autodiff/tape.h"
#include "jm3d/cli/ablation.h"
#include "jm3d/cli/cli.h"
#include "jm3d/common/binary_io.h"
#include "jm3d/dataset/split.h"
#include "jm3d/dataset/view_sampler.h"
#include "jm3d/evaluation/eval_sets.h"
#include "jm3d/evaluation/zero_shot.h"
#include "jm3d/training/checkpoint.h"
#include "jm3d/training/trainer.h"

namespace {

using namespace jm3d;  // NOLINT
namespace ad = jm3d::autodiff;
namespace ts = jm3d::testing;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---- 1 ---------------------------------------------------------------------

Outcome gradient_check() {
  const auto t0 = Clock::now();
  std::ostringstream out, err;
  const int code = cli::run({"jm3d", "gradcheck", "--dim", "16", "--views", "2", "--batch", "4",
                             "--eps", "1e-6", "--tol", "1e-4"},
                            out, err);
  const double secs = seconds_since(t0);
  std::string worst = "?";
  const std::string text = out.str();
  if (const auto p = text.find("max relative error: "); p != std::string::npos) {
    worst = text.substr(p + 20, text.find(' ', p + 20) - p - 20);
  }
  return {code == 0 && secs < 60.0,
          "max rel error " + worst + ", " + fmt("%.2f s", secs)};
}

// ---- 2 ---------------------------------------------------------------------

double nce_value(const ad::Tensor& a, const ad::Tensor& b, double tau) {
  ad::Tape tape;
  return alignment::info_nce(tape.constant(a), tape.constant(b), tau).value()[0];
}

Outcome loss_oracle() {
  const ad::Tensor eye = ad::Tensor::matrix(2, 2, {1, 0, 0, 1});
  const double want = std::log(1.0 + std::exp(1.0)) - 1.0;
  const double e1 = std::abs(nce_value(eye, eye, 1.0) - want);
  double e2 = 0.0;
  for (std::size_t n : {2u, 4u, 8u, 32u}) {
    ad::Tensor same = ad::Tensor::zeros({n, 4});
    for (std::size_t i = 0; i < n; ++i) {
      same.at(i, 1) = 0.6;
      same.at(i, 3) = -0.8;
    }
    e2 = std::max(e2, std::abs(nce_value(same, same, 0.07) - std::log(double(n))));
  }
  return {e1 < 1e-9 && e2 < 1e-12,
          "identity err " + fmt("%.1e", e1) + ", identical-rows err " + fmt("%.1e", e2)};
}

// ---- 3 ---------------------------------------------------------------------

Outcome jma_invariants() {
  Rng rng(2024);
  double worst_sum = 0.0;
  std::size_t perm_fail = 0, single_fail = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t v = 1 + rng.index(6), d = 1 + rng.index(12);
    ad::Tensor views = ad::Tensor::zeros({v, d});
    std::vector<double> text(d);
    for (double& x : views.values()) x = rng.normal() * (1 + rng.index(4));
    for (double& x : text) x = rng.normal();
    const auto base = alignment::jma_fuse_values(views, text);
    double s = 0.0;
    for (double w : base.weights) s += w;
    worst_sum = std::max(worst_sum, std::abs(s - 1.0));

    std::vector<std::size_t> order(v);
    for (std::size_t i = 0; i < v; ++i) order[i] = i;
    rng.shuffle(std::span<std::size_t>(order));
    ad::Tensor perm = ad::Tensor::zeros({v, d});
    for (std::size_t i = 0; i < v; ++i) {
      for (std::size_t j = 0; j < d; ++j) perm.at(i, j) = views.at(order[i], j);
    }
    if (alignment::jma_fuse_values(perm, text).output != base.output) ++perm_fail;

    ad::Tensor one = ad::Tensor::zeros({1, d});
    for (std::size_t j = 0; j < d; ++j) one.at(0, j) = views.at(0, j);
    const auto single = alignment::jma_fuse_values(one, text);
    if (single.output != std::vector<double>(one.data().begin(), one.data().end())) {
      ++single_fail;
    }
  }
  return {worst_sum < 1e-12 && perm_fail == 0 && single_fail == 0,
          "weight-sum err " + fmt("%.1e", worst_sum) + ", permutation mismatches " +
              std::to_string(perm_fail) + ", V=1 mismatches " + std::to_string(single_fail)};
}

// ---- 4 ---------------------------------------------------------------------

int ring_distance(int a, int b) {
  const int d = std::abs(a - b) % 360;
  return std::min(d, 360 - d);
}

Outcome cis_sampler() {
  const auto t0 = Clock::now();
  std::vector<int> angles;
  for (int a = 0; a < 360; a += 12) angles.push_back(a);
  Rng rng(6);
  std::size_t violations = 0, draws = 0;
  for (std::size_t v : {2u, 4u}) {
    for (int i = 0; i < 10000; ++i, ++draws) {
      const auto pick = dataset::sample_window_indices(angles, v, 60.0, rng);
      for (std::size_t x = 0; x < pick.size(); ++x) {
        for (std::size_t y = x + 1; y < pick.size(); ++y) {
          if (ring_distance(angles[pick[x]], angles[pick[y]]) >= 60) ++violations;
        }
      }
      if (std::set<std::size_t>(pick.begin(), pick.end()).size() != v) ++violations;
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < 5.0, std::to_string(draws) + " draws, " +
                                             std::to_string(violations) + " violations, " +
                                             fmt("%.2f s", secs)};
}

// ---- 5 ---------------------------------------------------------------------

Outcome eval_sets() {
  const auto& s = evaluation::modelnet_eval_sets();
  const auto subset = [](const evaluation::EvalSet& a, const evaluation::EvalSet& b) {
    const std::set<std::string> big(b.classes.begin(), b.classes.end());
    return std::all_of(a.classes.begin(), a.classes.end(),
                       [&](const std::string& c) { return big.count(c) > 0; });
  };
  const bool sizes =
      s.all.classes.size() == 40 && s.medium.classes.size() == 22 && s.hard.classes.size() == 17;
  const bool sums = evaluation::class_list_checksum(s.all.classes) == 0xe4cb985247809de4ull &&
                    evaluation::class_list_checksum(s.medium.classes) == 0xbe6916a1cc22411aull &&
                    evaluation::class_list_checksum(s.hard.classes) == 0x63fae1b38c394120ull;
  const bool nested = subset(s.hard, s.medium) && subset(s.medium, s.all);
  return {sizes && sums && nested,
          std::to_string(s.all.classes.size()) + "/" + std::to_string(s.medium.classes.size()) +
              "/" + std::to_string(s.hard.classes.size()) + " classes, lists " +
              (sums ? "match" : "DIFFER") + ", nesting " + (nested ? "holds" : "BROKEN")};
}

// ---- 6 ---------------------------------------------------------------------

const std::vector<std::uint64_t> kSeeds{1, 2, 3, 4, 5};

struct DeskRun {
  double first_loss = 0, last_loss = 0, top1 = 0;
  std::string checkpoint_bytes;
};

DeskRun desk_run(const dataset::Dataset& data, const dataset::CategoryTree& tree,
                 std::uint64_t seed) {
  const auto c = ts::desk_config(seed);
  const auto split = dataset::split_holdout(data, tree, c.holdout, c.seed);
  const auto r = training::train(c, data, tree, split.train, {});
  const training::Model m(r.checkpoint.config, r.checkpoint.dim, r.checkpoint.parents,
                          r.checkpoint.params);
  const std::vector<std::size_t> ks{1};
  const auto zs = evaluation::evaluate_zero_shot(m, data, split.test,
                                                 evaluation::used_leaf_names(data, tree),
                                                 evaluation::PromptTemplate(), ks);
  return {r.epochs.front().mean_loss, r.epochs.back().mean_loss, zs.accuracy[0],
          training::encode_checkpoint(r.checkpoint)};
}

std::vector<DeskRun> g_desk_runs;

Outcome end_to_end(const dataset::Dataset& data, const dataset::CategoryTree& tree) {
  const auto t0 = Clock::now();
  std::size_t good = 0;
  std::string per_seed;
  for (auto seed : kSeeds) {
    g_desk_runs.push_back(desk_run(data, tree, seed));
    const auto& r = g_desk_runs.back();
    const bool ok = r.last_loss < r.first_loss && r.top1 >= 0.9;
    good += ok;
    per_seed += (per_seed.empty() ? "" : " ") + fmt("%.3f", r.top1) + (ok ? "" : "*");
    std::cout << "      seed " << seed << ": loss " << fmt("%.4f", r.first_loss) << " -> "
              << fmt("%.4f", r.last_loss) << ", held-out top-1 " << fmt("%.4f", r.top1)
              << std::endl;
  }
  const double secs = seconds_since(t0);
  return {good * 2 > kSeeds.size() && secs < 300.0,
          std::to_string(good) + "/5 seeds pass (top-1 " + per_seed + "), " +
              fmt("%.1f s", secs)};
}

// ---- 7 ---------------------------------------------------------------------

Outcome ablation(const dataset::Dataset& data) {
  // Every switch runs once at reduced length so the full table is exercised.
  auto quick = ts::desk_config(1);
  quick.epochs = 5;
  const auto all = cli::ablation_variants(quick, "all");
  const std::vector<std::uint64_t> one{1};
  const auto all_rows = cli::run_ablation(all, data, one);
  std::cout << cli::ablation_table(all, all_rows);

  const auto pair = cli::ablation_variants(ts::desk_config(1), "jma");
  const auto rows = cli::run_ablation(pair, data, kSeeds);
  std::cout << cli::ablation_table(pair, rows);
  const bool structure = all_rows.size() == 6 && rows.size() == 2 && rows[0].name == "full" &&
                         rows[1].name == "no-jma";
  const double full = rows[0].mean_top1, off = rows[1].mean_top1;
  return {structure && full >= off - 0.02,
          "6-row table; mean top-1 full " + fmt("%.4f", full) + " vs no-jma " +
              fmt("%.4f", off) + " over 5 seeds"};
}

// ---- 8 ---------------------------------------------------------------------

Outcome determinism(const std::filesystem::path& scratch) {
  namespace fs = std::filesystem;
  const auto data_dir = (scratch / "data").string();
  const auto run_dir = (scratch / "run").string();
  std::ostringstream sink;
  if (cli::run({"jm3d", "gen-data", "--out", data_dir, "--seed",
                std::to_string(ts::kDeskDataSeed)},
               sink, sink) != 0) {
    return {false, "gen-data failed: " + sink.str()};
  }
  const std::vector<std::string> train{"jm3d", "pretrain", "--data", data_dir, "--out", run_dir,
                                       "--epochs", "50", "--batch", "16", "--lr", "0.01",
                                       "--seed", "1"};
  const char* files[] = {"checkpoint.bin", "metrics.jsonl", "eval.jsonl"};
  std::vector<std::string> first;
  for (int pass = 0; pass < 2; ++pass) {
    if (cli::run(train, sink, sink) != 0) return {false, "pretrain failed: " + sink.str()};
    std::size_t same = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto bytes = read_file(fs::path(run_dir) / files[i]);
      if (pass == 0) {
        first.push_back(bytes);
      } else {
        same += bytes == first[i];
      }
    }
    if (pass == 1 && same != 3) {
      return {false, std::to_string(3 - same) + " of 3 artifacts differ between runs"};
    }
  }
  // The in-process seed-1 run must produce the same checkpoint as the CLI.
  const bool matches_c6 = !g_desk_runs.empty() && g_desk_runs[0].checkpoint_bytes == first[0];
  return {matches_c6, "checkpoint (" + std::to_string(first[0].size()) +
                          " bytes) and both reports identical across runs; " +
                          (matches_c6 ? "matches" : "DIFFERS FROM") + " the in-process run"};
}

// ---- 9 ---------------------------------------------------------------------

Outcome permutation_invariance(const dataset::Dataset& data, const dataset::CategoryTree& tree) {
  const training::Model model(ts::desk_config(3), data.dim, tree.parent_count(), 11);
  Rng rng(9);
  std::size_t mismatches = 0, checks = 0;
  for (std::size_t c = 0; c < 50; ++c) {
    const auto& cloud = data.samples[(c * 37) % data.samples.size()].cloud;
    const auto base = encoders::encode_point_cloud(cloud, model.backbone(), model.params());
    auto shuffled = cloud;
    for (int p = 0; p < 100; ++p, ++checks) {
      rng.shuffle(std::span<dataset::Point3>(shuffled.points));
      const auto f = encoders::encode_point_cloud(shuffled, model.backbone(), model.params());
      mismatches += f.values != base.values;
    }
  }
  return {mismatches == 0, std::to_string(checks) + " permuted encodings, " +
                               std::to_string(mismatches) + " differ bitwise"};
}

}  // namespace

int main() {
  namespace fs = std::filesystem;
  const auto scratch =
      fs::temp_directory_path() / ("jm3d_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  const auto data = ts::desk_data();
  const auto tree = dataset::CategoryTree::from_samples(data.samples);

  struct Check {
    const char* name;
    std::function<Outcome()> fn;
  };
  const std::vector<Check> checks{
      {"C1 gradient correctness", gradient_check},
      {"C2 loss oracle", loss_oracle},
      {"C3 JMA invariants", jma_invariants},
      {"C4 CIS sampler", cis_sampler},
      {"C5 evaluation sets", eval_sets},
      {"C6 desk-scale training", [&] { return end_to_end(data, tree); }},
      {"C7 ablation harness", [&] { return ablation(data); }},
      {"C8 determinism", [&] { return determinism(scratch); }},
      {"C9 permutation invariance", [&] { return permutation_invariance(data, tree); }},
  };
  int failed = 0;
  std::vector<std::string> lines;
  for (const auto& c : checks) {
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    lines.push_back(std::string(o.pass ? "PASS" : "FAIL") + "  " + c.name + ": " + o.detail);
    std::cout << lines.back() << std::endl;
  }
  std::cout << "\nsummary\n";
  for (const auto& l : lines) std::cout << l << "\n";
  std::cout << (checks.size() - failed) << "/" << checks.size() << " criteria passed\n";
  fs::remove_all(scratch);
  return failed;
}
