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

#include "jm3d/training/batching.h"

#include "jm3d/alignment/jma.h"
#include "jm3d/common/errors.h"
#include "jm3d/dataset/view_sampler.h"
#include "jm3d/encoders/view_embedding.h"

namespace jm3d::training {
namespace ad = autodiff;

namespace {

ad::Tensor stack_rows(const std::vector<encoders::FeatureVec>& rows, std::size_t dim) {
  ad::Tensor t = ad::Tensor::zeros({rows.size(), dim});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].dim() != dim) {
      throw DimensionError("feature width " + std::to_string(rows[i].dim()) +
                           ", expected " + std::to_string(dim));
    }
    std::copy(rows[i].values.begin(), rows[i].values.end(), t.row(i).begin());
  }
  return t;
}

}  // namespace

TrainingData prepare_training_data(const Model& model, const dataset::Dataset& data,
                                   const dataset::CategoryTree& tree,
                                   std::span<const std::size_t> indices) {
  TrainingData out;
  std::vector<encoders::FeatureVec> leaf_rows;
  for (const auto& leaf : tree.leaves()) {
    leaf_rows.push_back(model.encode_text(make_prompt(leaf.name)));
  }
  std::vector<encoders::FeatureVec> parent_rows;
  for (const auto& parent : tree.parents()) {
    parent_rows.push_back(model.encode_text(make_prompt(parent)));
  }
  out.leaf_text = stack_rows(leaf_rows, model.dim());
  out.parent_text = stack_rows(parent_rows, model.dim());

  for (std::size_t index : indices) {
    if (index >= data.samples.size()) {
      throw ContractError("prepare_training_data: sample index out of range");
    }
    const dataset::TripletSample& s = data.samples[index];
    if (s.views.empty()) throw InputError("sample " + s.id + " has no views");
    if (s.cloud.empty()) throw InputError("sample " + s.id + " has an empty cloud");
    PreparedSample p;
    p.cloud = &s.cloud;
    std::vector<encoders::FeatureVec> feats;
    for (const auto& view : s.views) {
      p.angles.push_back(view.angle_deg);
      feats.push_back(model.image_encoder().encode(view));
    }
    p.view_features = stack_rows(feats, model.dim());
    const auto label = dataset::resolve_label(s, tree);
    p.parent = label.parent;
    p.leaf = label.sub;
    out.samples.push_back(std::move(p));
  }
  return out;
}

std::vector<std::size_t> select_views(const PreparedSample& sample,
                                      const TrainConfig& config, Rng& rng) {
  const std::size_t v = config.effective_views();
  if (config.cis && config.within_view) {
    return dataset::sample_window_indices(sample.angles, v, config.omega, rng);
  }
  return dataset::sample_random_indices(sample.angles.size(), v, rng);
}

alignment::EncodedBatch build_batch(ad::Tape& tape, const Model& model,
                                    const ad::ParameterStore& params,
                                    const TrainingData& data,
                                    std::span<const std::size_t> positions, Rng& rng) {
  const TrainConfig& config = model.config();
  const std::size_t d = model.dim();
  const std::size_t v = config.effective_views();
  const std::size_t n = positions.size();

  std::vector<const dataset::PointCloud*> clouds;
  ad::Tensor views = ad::Tensor::zeros({n * v, d});
  ad::Tensor text = ad::Tensor::zeros({n, d});
  alignment::EncodedBatch batch;
  for (std::size_t i = 0; i < n; ++i) {
    const PreparedSample& s = data.samples.at(positions[i]);
    clouds.push_back(s.cloud);
    const auto picked = select_views(s, config, rng);
    for (std::size_t k = 0; k < v; ++k) {
      const auto row = s.view_features.row(picked[k]);
      const encoders::FeatureVec f{{row.begin(), row.end()}, true};
      const auto e = encoders::embed_view(f, s.angles[picked[k]], model.tables());
      std::copy(e.values.begin(), e.values.end(), views.row(i * v + k).begin());
    }
    const auto t = config.htt ? data.leaf_text.row(s.leaf)
                              : data.parent_text.row(s.parent);
    std::copy(t.begin(), t.end(), text.row(i).begin());
    batch.parents.push_back(s.parent);
  }

  batch.point = model.backbone().encode(tape, params, clouds);
  batch.text = tape.constant(text);
  if (config.jma) {
    batch.joint = alignment::jma_fuse_batch(tape.constant(views), batch.text, v);
  } else {
    ad::Tensor mean = ad::Tensor::zeros({n, d});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < v; ++k) {
        for (std::size_t j = 0; j < d; ++j) mean.at(i, j) += views.at(i * v + k, j);
      }
      for (std::size_t j = 0; j < d; ++j) mean.at(i, j) /= static_cast<double>(v);
    }
    batch.joint = tape.constant(mean);
  }
  return batch;
}

}  // namespace jm3d::training
