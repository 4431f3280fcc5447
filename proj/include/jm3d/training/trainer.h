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

#ifndef JM3D_TRAINING_TRAINER_H_
#define JM3D_TRAINING_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "jm3d/alignment/losses.h"
#include "jm3d/dataset/category_tree.h"
#include "jm3d/dataset/triplet.h"
#include "jm3d/training/batching.h"
#include "jm3d/training/checkpoint.h"
#include "jm3d/training/config.h"
#include "jm3d/training/model.h"
#include "jm3d/training/optimizer.h"

namespace jm3d::training {

struct EpochMetrics {
  std::size_t epoch = 0;  // 1-based
  std::size_t steps = 0;
  double mean_loss = 0.0;
  double mean_contrastive = 0.0;
  double mean_parent = 0.0;
  double last_lr = 0.0;
  double temperature = 0.0;
};

alignment::LossOptions loss_options(const TrainConfig& config);

// Epoch-by-epoch trainer. Everything random flows from config.seed: the
// parameter initialization and, separately, the per-epoch shuffles and view
// draws.
class Trainer {
 public:
  // `indices` selects the training samples; the tree must cover them.
  // Throws ConfigError when the config is invalid or batch_size exceeds the
  // number of training samples.
  Trainer(const TrainConfig& config, const dataset::Dataset& data,
          const dataset::CategoryTree& tree, std::span<const std::size_t> indices);

  EpochMetrics run_epoch();
  bool done() const { return epoch_ >= model_.config().epochs; }
  std::size_t epoch() const { return epoch_; }
  std::size_t steps_per_epoch() const { return steps_per_epoch_; }

  const Model& model() const { return model_; }
  const OptimizerState& optimizer() const { return optimizer_; }
  const TrainingData& data() const { return data_; }
  Checkpoint checkpoint() const;

 private:
  Model model_;
  TrainingData data_;
  OptimizerState optimizer_;
  Rng data_rng_;
  std::vector<std::size_t> order_;
  std::size_t steps_per_epoch_ = 0;
  std::size_t epoch_ = 0;
};

struct TrainResult {
  Checkpoint checkpoint;
  std::vector<EpochMetrics> epochs;
};

// Runs every epoch; `on_epoch` (optional) sees each epoch as it finishes.
TrainResult train(const TrainConfig& config, const dataset::Dataset& data,
                  const dataset::CategoryTree& tree,
                  std::span<const std::size_t> indices,
                  const std::function<void(const EpochMetrics&, const Trainer&)>&
                      on_epoch = {});

}  // namespace jm3d::training

#endif  // JM3D_TRAINING_TRAINER_H_
