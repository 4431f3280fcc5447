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

#include "jm3d/training/trainer.h"

#include <cmath>
#include <numeric>

#include "jm3d/common/errors.h"

namespace jm3d::training {
namespace ad = autodiff;
namespace {

std::uint64_t init_seed(std::uint64_t seed) { return Rng::mix(seed ^ 0x1417ULL); }
std::uint64_t data_seed(std::uint64_t seed) { return Rng::mix(seed ^ 0xda7aULL); }

Model make_model(const TrainConfig& config, const dataset::Dataset& data,
                 const dataset::CategoryTree& tree) {
  validate(config);
  return Model(config, data.dim, tree.parent_count(), init_seed(config.seed));
}

}  // namespace

alignment::LossOptions loss_options(const TrainConfig& config) {
  alignment::LossOptions opt;
  opt.weights = alignment::LossWeights(config.lambda1, config.lambda2, config.lambda3);
  opt.mode = config.symmetric ? alignment::NceMode::kSymmetric
                              : alignment::NceMode::kRowOnly;
  opt.normalize = config.normalize;
  opt.parent_loss = config.htt;
  return opt;
}

Trainer::Trainer(const TrainConfig& config, const dataset::Dataset& data,
                 const dataset::CategoryTree& tree, std::span<const std::size_t> indices)
    : model_(make_model(config, data, tree)),
      data_(prepare_training_data(model_, data, tree, indices)),
      data_rng_(data_seed(config.seed)) {
  const std::size_t n = data_.samples.size();
  if (config.batch_size > n) {
    throw ConfigError("batch_size " + std::to_string(config.batch_size) +
                      " exceeds the " + std::to_string(n) + " training samples");
  }
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  // A trailing batch of one sample has no negatives and is dropped.
  steps_per_epoch_ = n / config.batch_size + (n % config.batch_size >= 2 ? 1 : 0);
}

EpochMetrics Trainer::run_epoch() {
  if (done()) throw ContractError("run_epoch: all epochs already ran");
  const TrainConfig& config = model_.config();
  const auto options = loss_options(config);
  const AdamWConfig adam{config.beta1, config.beta2, config.adam_eps,
                         config.weight_decay};
  const std::uint64_t total = static_cast<std::uint64_t>(steps_per_epoch_) * config.epochs;

  data_rng_.shuffle(std::span(order_));
  EpochMetrics m;
  m.epoch = ++epoch_;
  for (std::size_t s = 0; s < steps_per_epoch_; ++s) {
    const std::size_t begin = s * config.batch_size;
    const std::size_t count = std::min(config.batch_size, order_.size() - begin);
    const std::span<const std::size_t> positions(order_.data() + begin, count);

    ad::Tape tape;
    const auto batch = build_batch(tape, model_, model_.params(), data_, positions, data_rng_);
    const auto loss = alignment::total_loss(tape, batch, model_.heads(),
                                            model_.params(), options);
    const double value = loss.total.value()[0];
    if (!std::isfinite(value)) {
      throw NumericError("training loss became non-finite at epoch " +
                         std::to_string(m.epoch) + ", step " + std::to_string(s));
    }
    const auto grads = tape.backward(loss.total);
    const double lr = cosine_lr(optimizer_.step, total, config.lr);
    adamw_step(model_.mutable_params(), grads, optimizer_, lr, adam);

    m.mean_loss += value;
    m.mean_contrastive += loss.contrastive;
    m.mean_parent += loss.parent;
    m.last_lr = lr;
    ++m.steps;
  }
  const double k = 1.0 / static_cast<double>(m.steps);
  m.mean_loss *= k;
  m.mean_contrastive *= k;
  m.mean_parent *= k;
  m.temperature = model_.heads().temperature(model_.params());
  return m;
}

Checkpoint Trainer::checkpoint() const {
  Checkpoint c;
  c.config = model_.config();
  c.dim = model_.dim();
  c.parents = model_.parents();
  c.epoch = epoch_;
  c.params = model_.params();
  c.optimizer = optimizer_;
  return c;
}

TrainResult train(const TrainConfig& config, const dataset::Dataset& data,
                  const dataset::CategoryTree& tree, std::span<const std::size_t> indices,
                  const std::function<void(const EpochMetrics&, const Trainer&)>& on_epoch) {
  Trainer trainer(config, data, tree, indices);
  TrainResult result;
  while (!trainer.done()) {
    result.epochs.push_back(trainer.run_epoch());
    if (on_epoch) on_epoch(result.epochs.back(), trainer);
  }
  result.checkpoint = trainer.checkpoint();
  return result;
}

}  // namespace jm3d::training
