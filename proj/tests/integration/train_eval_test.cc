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

#include <vector>

#include "desk.h"
#include "doctest.h"
#include "jm3d/dataset/split.h"
#include "jm3d/evaluation/zero_shot.h"
#include "jm3d/training/checkpoint.h"
#include "jm3d/training/trainer.h"

namespace {

namespace ts = jm3d::testing;
namespace ev = jm3d::evaluation;

}  // namespace

TEST_CASE("desk benchmark: training aligns clouds with text and views") {
  const auto data = ts::desk_data();
  const auto tree = jm3d::dataset::CategoryTree::from_samples(data.samples);
  const auto config = ts::desk_config(1);
  const auto split = jm3d::dataset::split_holdout(data, tree, config.holdout, config.seed);
  REQUIRE(split.test.size() == 48);

  const auto result = jm3d::training::train(config, data, tree, split.train, {});
  REQUIRE(result.epochs.size() == 50);
  CHECK(result.epochs.back().mean_loss < result.epochs.front().mean_loss);

  // Checkpoint round trip keeps the model usable.
  const auto bytes = jm3d::training::encode_checkpoint(result.checkpoint);
  const auto back = jm3d::training::decode_checkpoint(bytes, "memory");
  CHECK(back == result.checkpoint);
  const jm3d::training::Model model(back.config, back.dim, back.parents, back.params);

  const auto classes = ev::used_leaf_names(data, tree);
  REQUIRE(classes.size() == 12);
  const std::vector<std::size_t> ks{1, 5};
  const auto zs =
      ev::evaluate_zero_shot(model, data, split.test, classes, ev::PromptTemplate(), ks);
  MESSAGE("held-out top-1 " << zs.accuracy[0] << ", top-5 " << zs.accuracy[1]);
  CHECK(zs.evaluated == 48);
  CHECK(zs.accuracy[0] >= 0.8);
  CHECK(zs.accuracy[1] >= zs.accuracy[0]);

  const auto rr = ev::evaluate_retrieval(model, data, tree, split.test);
  MESSAGE("image to cloud retrieval " << rr.top1_class_accuracy);
  CHECK(rr.queries == 48);
  CHECK(rr.top1_class_accuracy >= 0.8);

  // An untrained model sits near chance on the same split.
  const jm3d::training::Model fresh(config, data.dim, tree.parent_count(), 99);
  const auto base =
      ev::evaluate_zero_shot(fresh, data, split.test, classes, ev::PromptTemplate(), ks);
  CHECK(base.accuracy[0] < zs.accuracy[0]);
}
