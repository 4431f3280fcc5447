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
#include <numbers>
#include <vector>

#include "doctest.h"
#include "jm3d/autodiff/grad_check.h"
#include "jm3d/autodiff/kernels.h"
#include "jm3d/autodiff/ops.h"
#include "jm3d/common/errors.h"
#include "jm3d/common/random.h"
#include "jm3d/dataset/point_cloud.h"
#include "jm3d/encoders/frozen.h"
#include "jm3d/encoders/point_encoder.h"
#include "jm3d/encoders/view_embedding.h"

namespace ad = jm3d::autodiff;
namespace ds = jm3d::dataset;
namespace enc = jm3d::encoders;

namespace {

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

ds::PointCloud random_cloud(jm3d::Rng& rng, std::size_t n) {
  ds::PointCloud c;
  for (std::size_t i = 0; i < n; ++i) {
    c.points.push_back({rng.normal(), rng.normal(), rng.normal()});
  }
  return c;
}

ds::Raster gradient_raster(std::uint32_t h, std::uint32_t w, std::uint32_t c) {
  ds::Raster r{h, w, c, {}};
  for (std::size_t i = 0; i < std::size_t{h} * w * c; ++i) {
    r.pixels.push_back(static_cast<std::uint8_t>((i * 37) % 256));
  }
  return r;
}

}  // namespace

TEST_CASE("tokenize splits on whitespace and punctuation") {
  const auto t = enc::tokenize("A point-cloud of Chair!");
  REQUIRE(t == std::vector<std::string>{"a", "point", "cloud", "of", "chair"});
  CHECK(enc::tokenize("  ,.; ").empty());
}

TEST_CASE("frozen text encoder is deterministic and unit norm") {
  enc::FrozenTextEncoder te({});
  const auto a = te.encode("a point cloud of chair");
  const auto b = te.encode("a point cloud of chair");
  CHECK(a == b);
  CHECK(a.dim() == 32);
  CHECK(std::abs(norm(a.values) - 1.0) < 1e-10);
  CHECK_THROWS_AS(te.encode(""), jm3d::InputError);
  CHECK_THROWS_AS(te.encode("  !! "), jm3d::InputError);
}

TEST_CASE("frozen text encoder separates different words over 100 seeds") {
  int wins = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    enc::FrozenTextEncoder te({s, 4096, 32});
    const auto chair = te.encode("chair");
    const auto again = te.encode("chair");
    const auto plane = te.encode("airplane");
    const double same = enc::cosine(chair.values, again.values);
    const double diff = enc::cosine(chair.values, plane.values);
    if (std::abs(same - 1.0) < 1e-12 && same > diff) ++wins;
  }
  CHECK(wins >= 99);
}

TEST_CASE("frozen image encoder precomputed path normalizes") {
  enc::FrozenImageEncoder ie({0x5eed, 4096, 4});
  ds::ViewRecord v{0, ds::ViewKind::kRgb, ds::PrecomputedFeature{3, 0, 4, 0}};
  const auto f = ie.encode(v);
  CHECK(f.values == std::vector<double>{0.6, 0.0, 0.8, 0.0});
  CHECK(f.unit_norm);

  ds::ViewRecord wrong{0, ds::ViewKind::kRgb, ds::PrecomputedFeature{1, 2}};
  CHECK_THROWS_AS(ie.encode(wrong), jm3d::DimensionError);
  ds::ViewRecord empty{0, ds::ViewKind::kRgb, std::monostate{}};
  CHECK_THROWS_AS(ie.encode(empty), jm3d::InputError);
}

TEST_CASE("frozen image encoder raster path") {
  enc::FrozenImageEncoder ie({});
  ds::ViewRecord a{24, ds::ViewKind::kRgb, gradient_raster(40, 24, 3)};
  ds::ViewRecord b = a;
  const auto fa = ie.encode(a);
  CHECK(fa == ie.encode(b));
  CHECK(std::abs(norm(fa.values) - 1.0) < 1e-10);

  // Smaller than the grid: cells fall back to the nearest pixel.
  ds::ViewRecord tiny{0, ds::ViewKind::kDepth, gradient_raster(3, 5, 1)};
  CHECK(std::abs(norm(ie.encode(tiny).values) - 1.0) < 1e-10);

  ds::Raster zero{8, 8, 1, std::vector<std::uint8_t>(64, 0)};
  ds::ViewRecord z{0, ds::ViewKind::kDepth, zero};
  const auto fz = ie.encode(z);
  CHECK(norm(fz.values) == 0.0);
  for (double x : fz.values) CHECK(std::isfinite(x));
}

TEST_CASE("sinusoidal tables: shape, row norm, distinct rows and tables") {
  for (std::size_t d : {4u, 16u, 32u}) {
    const auto t = enc::make_sinusoidal_tables(d, 0.25);
    REQUIRE(t.degree.shape() == ad::Shape{30, d});
    REQUIRE(t.depth.shape() == ad::Shape{30, d});
    CHECK(t.degree != t.depth);
    for (std::size_t i = 0; i < 30; ++i) {
      std::vector<double> r(t.degree.row(i).begin(), t.degree.row(i).end());
      CHECK(std::abs(norm(r) - 0.25) < 1e-12);
      for (std::size_t j = i + 1; j < 30; ++j) {
        double diff = 0;
        for (std::size_t k = 0; k < d; ++k) {
          const double a = t.degree.at(i, k) + t.depth.at(i, k);
          const double b = t.degree.at(j, k) + t.depth.at(j, k);
          diff = std::max(diff, std::abs(a - b));
        }
        CHECK(diff > 1e-6);
      }
    }
  }
  // Spot value: bucket 1, first pair at frequency 1.
  const auto t = enc::make_sinusoidal_tables(2, 1.0);
  CHECK(t.degree.at(1, 0) == doctest::Approx(std::sin(1.0)));
  CHECK(t.degree.at(1, 1) == doctest::Approx(std::cos(1.0)));
  CHECK(t.depth.at(0, 0) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("embed_view") {
  const std::vector<double> raw{0.1, -0.4, 0.7, 0.2, -0.3, 0.5};
  const enc::FeatureVec f{raw, false};

  const auto zero = enc::make_zero_tables(6);
  const auto plain = enc::embed_view(f, 48, zero);
  const auto ln = ad::kernels::layer_norm(ad::Tensor({1, 6}, raw));
  CHECK(plain.values == ln.data());

  const auto tables = enc::make_sinusoidal_tables(6);
  const auto a = enc::embed_view(f, 48, tables);
  CHECK(a == enc::embed_view(f, 48, tables));
  CHECK(a != enc::embed_view(f, 60, tables));
  double mean = 0;
  for (double x : a.values) mean += x;
  CHECK(std::abs(mean / 6) < 1e-10);

  CHECK_THROWS_AS(enc::embed_view(f, 13, tables), jm3d::ContractError);
  CHECK_THROWS_AS(enc::embed_view(f, 360, tables), jm3d::ContractError);
  CHECK_THROWS_AS(enc::embed_view(enc::FeatureVec{{1, 2}, false}, 0, tables),
                  jm3d::DimensionError);
}

TEST_CASE("point encoder is permutation invariant and idempotent under repeats") {
  enc::SharedMlpMaxPoolEncoder backbone({16, 8});
  ad::ParameterStore store;
  jm3d::Rng rng(7);
  backbone.init_parameters(store, rng);
  CHECK(store.names() ==
        std::vector<std::string>{"point.head.b", "point.head.w", "point.mlp1.b",
                                 "point.mlp1.w", "point.mlp2.b", "point.mlp2.w"});

  auto cloud = random_cloud(rng, 64);
  const auto base = enc::encode_point_cloud(cloud, backbone, store);
  CHECK(std::abs(norm(base.values) - 1.0) < 1e-10);
  for (int p = 0; p < 20; ++p) {
    auto shuffled = cloud;
    rng.shuffle(std::span(shuffled.points));
    CHECK(enc::encode_point_cloud(shuffled, backbone, store) == base);
  }

  ds::PointCloud one{{cloud.points[3]}};
  ds::PointCloud many{std::vector<ds::Point3>(17, cloud.points[3])};
  CHECK(enc::encode_point_cloud(one, backbone, store) ==
        enc::encode_point_cloud(many, backbone, store));

  CHECK_THROWS_AS(enc::encode_point_cloud(ds::PointCloud{}, backbone, store),
                  jm3d::InputError);
}

TEST_CASE("point encoder batch rows equal single encodings") {
  enc::SharedMlpMaxPoolEncoder backbone({8, 4});
  ad::ParameterStore store;
  jm3d::Rng rng(3);
  backbone.init_parameters(store, rng);
  const auto a = random_cloud(rng, 10);
  const auto b = random_cloud(rng, 5);
  ad::Tape tape;
  const ds::PointCloud* batch[] = {&a, &b};
  const auto out = backbone.encode(tape, store, batch).value();
  REQUIRE(out.shape() == ad::Shape{2, 4});
  const auto fa = enc::encode_point_cloud(a, backbone, store);
  const auto fb = enc::encode_point_cloud(b, backbone, store);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(out.at(0, j) == fa.values[j]);
    CHECK(out.at(1, j) == fb.values[j]);
  }
}

TEST_CASE("point encoder gradients match finite differences") {
  enc::SharedMlpMaxPoolEncoder backbone({6, 4});
  ad::ParameterStore store;
  jm3d::Rng rng(11);
  backbone.init_parameters(store, rng);
  // Non-zero biases so every path is exercised.
  for (const auto& name : store.names()) {
    for (double& v : store.mutable_value(name).values()) v += 0.05 * rng.normal();
  }
  const auto a = random_cloud(rng, 7);
  const auto b = random_cloud(rng, 4);
  const ad::Tensor target = ad::Tensor::matrix(
      2, 4, {0.3, -0.2, 0.5, 0.1, -0.4, 0.6, 0.0, 0.2});
  const auto errors = ad::grad_check_parameters(
      [&](ad::Tape& tape, const ad::ParameterStore& p) {
        const ds::PointCloud* batch[] = {&a, &b};
        ad::Var out = backbone.encode(tape, p, batch);
        return ad::sum(ad::mul(out, tape.constant(target)));
      },
      store, 1e-6);
  REQUIRE(errors.size() == 6);
  for (const auto& [name, err] : errors) {
    INFO(name);
    CHECK(err < 1e-4);
  }
}
