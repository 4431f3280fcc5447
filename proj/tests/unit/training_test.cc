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

#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "jm3d/autodiff/grad_check.h"
#include "jm3d/common/binary_io.h"
#include "jm3d/common/errors.h"
#include "jm3d/dataset/category_tree.h"
#include "jm3d/dataset/synthetic.h"
#include "jm3d/training/batching.h"
#include "jm3d/training/checkpoint.h"
#include "jm3d/training/config.h"
#include "jm3d/training/optimizer.h"
#include "jm3d/training/trainer.h"
#include "test_util.h"

namespace ad = jm3d::autodiff;
namespace ds = jm3d::dataset;
namespace tr = jm3d::training;

namespace {

ds::Dataset small_synth(std::size_t parents, std::size_t subs, std::size_t per_sub,
                        std::size_t points, std::size_t dim, std::uint64_t seed) {
  ds::SynthConfig c;
  c.parents = parents;
  c.subs_per_parent = subs;
  c.samples_per_sub = per_sub;
  c.points = points;
  c.dim = dim;
  return ds::synth_samples(c, seed);
}

std::vector<std::size_t> all_indices(const ds::Dataset& d) {
  std::vector<std::size_t> v(d.samples.size());
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

}  // namespace

TEST_CASE("cosine_lr") {
  CHECK(tr::cosine_lr(0, 100, 1e-3) == 1e-3);
  CHECK(std::abs(tr::cosine_lr(100, 100, 1e-3)) < 1e-18);
  CHECK(std::abs(tr::cosine_lr(50, 100, 1e-3) - 5e-4) < 1e-18);
  double prev = 1.0;
  for (std::uint64_t s = 0; s <= 10; ++s) {
    const double lr = tr::cosine_lr(s, 10, 1.0);
    CHECK(lr <= prev);
    prev = lr;
  }
  CHECK_THROWS_AS(tr::cosine_lr(11, 10, 1.0), jm3d::ContractError);
  CHECK_THROWS_AS(tr::cosine_lr(0, 0, 1.0), jm3d::ContractError);
}

TEST_CASE("adamw: zero gradient without decay leaves parameters alone") {
  ad::ParameterStore p;
  p.add("w", ad::Tensor::vector({0.5, -1.5, 2.0}));
  const auto before = p.value("w");
  tr::OptimizerState st;
  for (int i = 0; i < 10; ++i) {
    tr::adamw_step(p, {{"w", ad::Tensor::zeros({3})}}, st, 1e-2, {0.9, 0.999, 1e-8, 0.0});
  }
  CHECK(p.value("w") == before);
  CHECK(st.step == 10);
}

TEST_CASE("adamw: constant gradient moves each coordinate by lr against its sign") {
  ad::ParameterStore p;
  p.add("w", ad::Tensor::vector({0.0, 0.0, 0.0}), true);
  const std::vector<double> g{0.3, -2.0, 1e-3};
  tr::OptimizerState st;
  const double lr = 1e-3;
  const double eps = 1e-8;
  std::vector<double> prev(3, 0.0);
  for (int t = 1; t <= 200; ++t) {
    tr::adamw_step(p, {{"w", ad::Tensor::vector(g)}}, st, lr, {0.9, 0.999, eps, 0.01});
    for (std::size_t i = 0; i < 3; ++i) {
      const double step = p.value("w")[i] - prev[i];
      // Bias-corrected moments equal g and g^2 exactly for a constant g.
      const double oracle = -lr * g[i] / (std::abs(g[i]) + eps);
      CHECK(std::abs(step - oracle) < 1e-12);
      CHECK(std::signbit(step) != std::signbit(g[i]));
      prev[i] = p.value("w")[i];
    }
  }
}

TEST_CASE("adamw: decoupled decay shrinks by (1 - lr wd) per step") {
  ad::ParameterStore p;
  p.add("w", ad::Tensor::vector({1.0, -2.0}));
  p.add("b", ad::Tensor::vector({1.0}), true);
  tr::OptimizerState st;
  const double lr = 0.1, wd = 0.5;
  for (int t = 0; t < 5; ++t) {
    tr::adamw_step(p, {{"w", ad::Tensor::zeros({2})}, {"b", ad::Tensor::zeros({1})}}, st,
                   lr, {0.9, 0.999, 1e-8, wd});
  }
  const double f = std::pow(1 - lr * wd, 5);
  CHECK(std::abs(p.value("w")[0] - f) < 1e-15);
  CHECK(std::abs(p.value("w")[1] + 2 * f) < 1e-15);
  CHECK(p.value("b")[0] == 1.0);
}

TEST_CASE("adamw errors") {
  ad::ParameterStore p;
  p.add("w", ad::Tensor::vector({1.0, 2.0}));
  tr::OptimizerState st;
  CHECK_THROWS_AS(tr::adamw_step(p, {{"w", ad::Tensor::zeros({3})}}, st, 0.1, {}),
                  jm3d::DimensionError);
  CHECK_THROWS_AS(tr::adamw_step(p, {{"x", ad::Tensor::zeros({2})}}, st, 0.1, {}),
                  jm3d::ContractError);
  CHECK(st.step == 0);
}

TEST_CASE("config: defaults, settings, echo and hash") {
  tr::TrainConfig c;
  CHECK(c.batch_size == 128);
  CHECK(c.lr == 1e-3);
  CHECK(c.epochs == 250);
  CHECK(c.omega == 60.0);
  CHECK(c.weight_decay == 0.01);
  CHECK_NOTHROW(tr::validate(c));

  tr::apply_setting(c, "lr", "0.0123");
  tr::apply_setting(c, "jma", "off");
  tr::apply_setting(c, "seed", "0x10");
  CHECK(c.lr == 0.0123);
  CHECK_FALSE(c.jma);
  CHECK(c.seed == 16);
  CHECK_THROWS_AS(tr::apply_setting(c, "nope", "1"), jm3d::ConfigError);
  CHECK_THROWS_AS(tr::apply_setting(c, "epochs", "ten"), jm3d::ConfigError);
  CHECK_THROWS_AS(tr::apply_setting(c, "cis", "maybe"), jm3d::ConfigError);

  tr::TrainConfig back;
  for (const auto& [k, v] : tr::to_key_values(c)) tr::apply_setting(back, k, v);
  CHECK(back == c);
  CHECK(tr::config_hash(back) == tr::config_hash(c));
  CHECK(tr::config_hash(c) != tr::config_hash(tr::TrainConfig{}));
  CHECK(tr::config_hash(c).size() == 16);

  tr::TrainConfig bad;
  bad.lambda1 = bad.lambda2 = bad.lambda3 = 0;
  CHECK_THROWS_AS(tr::validate(bad), jm3d::ConfigError);
  bad = {};
  bad.batch_size = 1;
  CHECK_THROWS_AS(tr::validate(bad), jm3d::ConfigError);
  bad = {};
  bad.lr = -1;
  CHECK_THROWS_AS(tr::validate(bad), jm3d::ConfigError);
}

TEST_CASE("training reduces the loss between the first two epochs") {
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto data = small_synth(2, 2, 8, 64, 16, seed);
    const auto tree = ds::CategoryTree::from_samples(data.samples);
    tr::TrainConfig c;
    c.epochs = 2;
    c.batch_size = 8;
    c.seed = seed;
    c.point_hidden = 16;
    c.head_hidden = 16;
    const auto r = tr::train(c, data, tree, all_indices(data));
    REQUIRE(r.epochs.size() == 2);
    if (r.epochs[1].mean_loss < r.epochs[0].mean_loss) ++wins;
  }
  CHECK(wins >= 3);
}

TEST_CASE("training is deterministic and checkpoints round-trip byte for byte") {
  const auto data = small_synth(2, 2, 4, 32, 8, 3);
  const auto tree = ds::CategoryTree::from_samples(data.samples);
  tr::TrainConfig c;
  c.epochs = 3;
  c.batch_size = 4;
  c.seed = 11;
  c.point_hidden = 8;
  c.head_hidden = 8;
  const auto a = tr::train(c, data, tree, all_indices(data));
  const auto b = tr::train(c, data, tree, all_indices(data));
  for (std::size_t e = 0; e < 3; ++e) CHECK(a.epochs[e].mean_loss == b.epochs[e].mean_loss);
  const auto bytes = tr::encode_checkpoint(a.checkpoint);
  CHECK(bytes == tr::encode_checkpoint(b.checkpoint));

  jm3d::testing::TempDir dir;
  tr::save_checkpoint(a.checkpoint, dir.path() / "ck.bin");
  const auto loaded = tr::load_checkpoint(dir.path() / "ck.bin");
  CHECK(loaded == a.checkpoint);
  CHECK(tr::encode_checkpoint(loaded) == bytes);
  CHECK(loaded.epoch == 3);
  CHECK(loaded.optimizer.step == 3 * 4);

  for (const auto& name : loaded.params.names()) {
    INFO(name);
    CHECK((name.rfind("point.", 0) == 0 || name.rfind("align.", 0) == 0));
  }

  CHECK_THROWS_AS(tr::decode_checkpoint(std::string_view(bytes).substr(0, bytes.size() - 3),
                                        "cut"),
                  jm3d::IoError);
  std::string bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(tr::decode_checkpoint(bad, "bad"), jm3d::IoError);
  CHECK_THROWS_AS(tr::decode_checkpoint(bytes + "x", "long"), jm3d::IoError);

  c.seed = 12;
  CHECK(tr::encode_checkpoint(tr::train(c, data, tree, all_indices(data)).checkpoint) !=
        bytes);
}

TEST_CASE("every ablation switch trains to completion") {
  const auto data = small_synth(2, 2, 4, 32, 8, 5);
  const auto tree = ds::CategoryTree::from_samples(data.samples);
  for (const char* key : {"cis", "htt", "jma", "embeddings", "within_view"}) {
    tr::TrainConfig c;
    c.epochs = 2;
    c.batch_size = 4;
    c.views = 3;
    c.point_hidden = 8;
    c.head_hidden = 8;
    tr::apply_setting(c, key, "false");
    INFO(key);
    const auto r = tr::train(c, data, tree, all_indices(data));
    CHECK(std::isfinite(r.epochs.back().mean_loss));
    if (std::string(key) == "htt") CHECK(r.epochs.back().mean_parent == 0.0);
  }
}

TEST_CASE("batch size larger than the training set is rejected") {
  const auto data = small_synth(1, 2, 2, 16, 8, 1);
  const auto tree = ds::CategoryTree::from_samples(data.samples);
  tr::TrainConfig c;
  c.batch_size = 8;
  CHECK_THROWS_AS(tr::Trainer(c, data, tree, all_indices(data)), jm3d::ConfigError);
}

TEST_CASE("view selection respects the switches") {
  tr::PreparedSample s;
  for (int a = 0; a < 360; a += 12) s.angles.push_back(a);
  jm3d::Rng rng(4);
  tr::TrainConfig c;
  c.views = 3;
  for (int i = 0; i < 200; ++i) {
    const auto v = tr::select_views(s, c, rng);
    REQUIRE(v.size() == 3);
    for (std::size_t x : v)
      for (std::size_t y : v) {
        const int d = std::abs(s.angles[x] - s.angles[y]);
        CHECK(std::min(d, 360 - d) < 60);
      }
  }
  c.cis = false;
  CHECK(tr::select_views(s, c, rng).size() == 1);
  c.cis = true;
  c.within_view = false;
  bool wide = false;
  for (int i = 0; i < 200 && !wide; ++i) {
    const auto v = tr::select_views(s, c, rng);
    const int d = std::abs(s.angles[v.front()] - s.angles[v.back()]);
    wide = std::min(d, 360 - d) >= 60;
  }
  CHECK(wide);
}

TEST_CASE("full loss gradient matches finite differences") {
  const auto data = small_synth(2, 2, 1, 24, 16, 9);
  const auto tree = ds::CategoryTree::from_samples(data.samples);
  tr::TrainConfig c;
  c.views = 2;
  c.batch_size = 4;
  c.point_hidden = 6;
  c.head_hidden = 5;
  tr::Trainer trainer(c, data, tree, all_indices(data));
  const auto& model = trainer.model();
  const std::vector<std::size_t> positions{0, 1, 2, 3};
  const auto options = tr::loss_options(c);
  const auto errors = ad::grad_check_parameters(
      [&](ad::Tape& tape, const ad::ParameterStore& p) {
        jm3d::Rng rng(5);
        const auto batch = tr::build_batch(tape, model, p, trainer.data(), positions, rng);
        return jm3d::alignment::total_loss(tape, batch, model.heads(), p, options).total;
      },
      model.params(), 1e-6);
  CHECK(errors.size() == 11);
  for (const auto& [name, err] : errors) {
    INFO(name);
    CHECK(err < 1e-4);
  }
}
