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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "jm3d/alignment/heads.h"
#include "jm3d/alignment/jma.h"
#include "jm3d/alignment/losses.h"
#include "jm3d/autodiff/grad_check.h"
#include "jm3d/autodiff/ops.h"
#include "jm3d/common/errors.h"
#include "jm3d/common/random.h"

namespace ad = jm3d::autodiff;
namespace al = jm3d::alignment;

namespace {

ad::Tensor random_matrix(jm3d::Rng& rng, std::size_t r, std::size_t c,
                         bool unit_rows) {
  ad::Tensor t = ad::Tensor::zeros({r, c});
  for (double& v : t.values()) v = rng.normal();
  if (unit_rows) {
    for (std::size_t i = 0; i < r; ++i) {
      double s = 0;
      for (double v : t.row(i)) s += v * v;
      for (double& v : t.row(i)) v /= std::sqrt(s);
    }
  }
  return t;
}

// Direct evaluation of the symmetric contrastive loss from its definition.
double nce_oracle(const ad::Tensor& a, const ad::Tensor& b, double tau) {
  const std::size_t n = a.rows();
  std::vector<std::vector<double>> s(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double d = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) d += a.at(i, k) * b.at(j, k);
      s[i][j] = d / tau;
    }
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0, col = 0;
    for (std::size_t k = 0; k < n; ++k) {
      row += std::exp(s[i][k]);
      col += std::exp(s[k][i]);
    }
    total += -std::log(std::exp(s[i][i]) / row) - std::log(std::exp(s[i][i]) / col);
  }
  return total / (2.0 * n);
}

double nce(const ad::Tensor& a, const ad::Tensor& b, double tau,
           al::NceMode mode = al::NceMode::kSymmetric) {
  ad::Tape tape;
  return al::info_nce(tape.constant(a), tape.constant(b), tau, mode).value()[0];
}

}  // namespace

TEST_CASE("info_nce identity oracle") {
  const ad::Tensor eye = ad::Tensor::matrix(2, 2, {1, 0, 0, 1});
  const double expect = std::log(1.0 + std::exp(1.0)) - 1.0;
  CHECK(std::abs(expect - 0.3132616875182228) < 1e-15);
  CHECK(std::abs(nce(eye, eye, 1.0) - expect) < 1e-9);
  CHECK(std::abs(nce(eye, eye, 1.0, al::NceMode::kRowOnly) - expect / 2) < 1e-9);
}

TEST_CASE("info_nce identical rows gives ln N") {
  for (std::size_t n : {2u, 3u, 7u, 16u}) {
    ad::Tensor a = ad::Tensor::zeros({n, 3});
    for (std::size_t i = 0; i < n; ++i) {
      a.at(i, 0) = 0.6;
      a.at(i, 1) = 0.8;
    }
    CHECK(std::abs(nce(a, a, 0.07) - std::log(static_cast<double>(n))) < 1e-12);
  }
}

TEST_CASE("info_nce agrees with the definition and is symmetric") {
  jm3d::Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.index(8);
    const auto a = random_matrix(rng, n, 6, true);
    const auto b = random_matrix(rng, n, 6, true);
    const double tau = rng.uniform(0.05, 2.0);
    CHECK(std::abs(nce(a, b, tau) - nce_oracle(a, b, tau)) < 1e-10);
    CHECK(nce(a, b, tau) == nce(b, a, tau));
  }
}

TEST_CASE("info_nce is invariant under joint row permutation") {
  jm3d::Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.index(8);
    const auto a = random_matrix(rng, n, 5, true);
    const auto b = random_matrix(rng, n, 5, true);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    rng.shuffle(std::span(perm));
    ad::Tensor pa = a, pb = b;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < 5; ++k) {
        pa.at(i, k) = a.at(perm[i], k);
        pb.at(i, k) = b.at(perm[i], k);
      }
    CHECK(std::abs(nce(a, b, 0.1) - nce(pa, pb, 0.1)) < 1e-12);
  }
}

TEST_CASE("info_nce decreases when a diagonal logit increases") {
  jm3d::Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.index(6);
    ad::Tensor logits = random_matrix(rng, n, n, false);
    ad::Tensor eye = ad::Tensor::zeros({n, n});
    for (std::size_t i = 0; i < n; ++i) eye.at(i, i) = 1.0;
    const double before = nce(logits, eye, 1.0);
    const std::size_t i = rng.index(n);
    logits.at(i, i) += rng.uniform(0.01, 1.0);
    CHECK(nce(logits, eye, 1.0) < before);
  }
}

TEST_CASE("info_nce contract errors") {
  ad::Tape tape;
  const auto one = tape.constant(ad::Tensor::matrix(1, 2, {1, 0}));
  CHECK_THROWS_AS(al::info_nce(one, one, 1.0), jm3d::ContractError);
  const auto a = tape.constant(ad::Tensor::zeros({2, 3}));
  const auto b = tape.constant(ad::Tensor::zeros({2, 4}));
  CHECK_THROWS_AS(al::info_nce(a, b, 1.0), jm3d::DimensionError);
}

TEST_CASE("loss weights and contrastive_total") {
  CHECK_THROWS_AS(al::LossWeights(0, 0, 0), jm3d::ConfigError);
  CHECK_THROWS_AS(al::LossWeights(-1, 1, 1), jm3d::ConfigError);
  CHECK_THROWS_AS(al::LossWeights(NAN, 1, 1), jm3d::ConfigError);

  const ad::Tensor eye = ad::Tensor::matrix(2, 2, {1, 0, 0, 1});
  const double unit = std::log(1.0 + std::exp(1.0)) - 1.0;
  ad::Tape tape;
  const auto e = tape.constant(eye);
  const auto one = tape.constant(ad::Tensor::scalar(1.0));
  const auto all = al::contrastive_total(e, e, e, {1, 1, 1}, one);
  CHECK(std::abs(all.value()[0] - 3 * unit) < 1e-9);
  CHECK(std::abs(all.value()[0] - 0.9397850625546684) < 1e-9);

  jm3d::Rng rng(2);
  const auto c = tape.constant(random_matrix(rng, 4, 3, true));
  const auto j = tape.constant(random_matrix(rng, 4, 3, true));
  const auto s = tape.constant(random_matrix(rng, 4, 3, true));
  const auto inv = tape.constant(ad::Tensor::scalar(1.0 / 0.3));
  CHECK(al::contrastive_total(c, j, s, {1, 0, 0}, inv).value()[0] ==
        al::info_nce(c, j, inv).value()[0]);
  const double mix = al::contrastive_total(c, j, s, {0.5, 2, 1}, inv).value()[0];
  const double want = 0.5 * al::info_nce(c, j, inv).value()[0] +
                      2 * al::info_nce(c, s, inv).value()[0] +
                      al::info_nce(s, j, inv).value()[0];
  CHECK(std::abs(mix - want) < 1e-12);
}

TEST_CASE("parent_class_loss") {
  ad::Tape tape;
  const std::vector<std::size_t> labels{0, 2, 1};
  const auto uniform = tape.constant(ad::Tensor::filled({3, 5}, 0.7));
  CHECK(std::abs(al::parent_class_loss(uniform, labels).value()[0] - std::log(5.0)) <
        1e-12);

  double prev = INFINITY;
  for (double margin : {1.0, 5.0, 20.0, 60.0}) {
    ad::Tensor l = ad::Tensor::zeros({3, 5});
    for (std::size_t i = 0; i < 3; ++i) l.at(i, labels[i]) = margin;
    const double loss = al::parent_class_loss(tape.constant(l), labels).value()[0];
    CHECK(loss < prev);
    CHECK(loss >= 0.0);
    prev = loss;
  }
  CHECK(prev < 1e-20);

  jm3d::Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto l = random_matrix(rng, 3, 5, false);
    double want = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      double z = 0;
      for (std::size_t k = 0; k < 5; ++k) z += std::exp(l.at(i, k));
      want -= std::log(std::exp(l.at(i, labels[i])) / z);
    }
    want /= 3;
    CHECK(std::abs(al::parent_class_loss(tape.constant(l), labels).value()[0] - want) <
          1e-12);
  }
  const std::vector<std::size_t> bad{0, 5, 1};
  CHECK_THROWS_AS(al::parent_class_loss(uniform, bad), jm3d::LabelError);
}

TEST_CASE("jma_fuse hand example") {
  const auto r = al::jma_fuse_values(ad::Tensor::matrix(2, 2, {1, 0, 0, 1}),
                                     std::vector<double>{1, 0});
  const double e = std::exp(1.0);
  CHECK(std::abs(r.weights[0] - e / (e + 1)) < 1e-15);
  CHECK(std::abs(r.weights[1] - 1 / (e + 1)) < 1e-15);
  CHECK(r.output[0] == doctest::Approx(0.731).epsilon(1e-3));
  CHECK(r.output[1] == doctest::Approx(0.269).epsilon(1e-3));
}

TEST_CASE("jma_fuse invariants over random instances") {
  jm3d::Rng rng(21);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t v = 1 + rng.index(6);
    const std::size_t d = 2 + rng.index(8);
    const auto views = random_matrix(rng, v, d, false);
    std::vector<double> text(d);
    for (double& x : text) x = rng.normal();
    const auto r = al::jma_fuse_values(views, text);
    double sum = 0;
    for (double w : r.weights) {
      CHECK(w >= 0.0);
      sum += w;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    for (std::size_t k = 0; k < d; ++k) {
      double lo = INFINITY, hi = -INFINITY;
      for (std::size_t i = 0; i < v; ++i) {
        lo = std::min(lo, views.at(i, k));
        hi = std::max(hi, views.at(i, k));
      }
      CHECK(r.output[k] >= lo - 1e-12);
      CHECK(r.output[k] <= hi + 1e-12);
    }
    std::vector<std::size_t> perm(v);
    std::iota(perm.begin(), perm.end(), 0u);
    rng.shuffle(std::span(perm));
    ad::Tensor pv = views;
    for (std::size_t i = 0; i < v; ++i)
      for (std::size_t k = 0; k < d; ++k) pv.at(i, k) = views.at(perm[i], k);
    CHECK(al::jma_fuse_values(pv, text).output == r.output);
    if (v == 1) CHECK(r.output == views.data());
  }
}

TEST_CASE("jma_fuse errors and batch form") {
  ad::Tape tape;
  const auto views = tape.constant(ad::Tensor::zeros({2, 3}));
  const auto text = tape.constant(ad::Tensor::vector({1, 2}));
  CHECK_THROWS_AS(al::jma_fuse(views, text), jm3d::DimensionError);

  jm3d::Rng rng(8);
  const auto vb = random_matrix(rng, 6, 4, false);
  const auto tb = random_matrix(rng, 3, 4, false);
  const auto out = al::jma_fuse_batch(tape.constant(vb), tape.constant(tb), 2).value();
  REQUIRE(out.shape() == ad::Shape{3, 4});
  for (std::size_t i = 0; i < 3; ++i) {
    ad::Tensor block = ad::Tensor::zeros({2, 4});
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t k = 0; k < 4; ++k) block.at(r, k) = vb.at(2 * i + r, k);
    const auto single = al::jma_fuse_values(
        block, std::vector<double>(tb.row(i).begin(), tb.row(i).end()));
    for (std::size_t k = 0; k < 4; ++k) CHECK(out.at(i, k) == single.output[k]);
  }
  CHECK_THROWS_AS(al::jma_fuse_batch(tape.constant(vb), tape.constant(tb), 3),
                  jm3d::DimensionError);
}

TEST_CASE("heads: temperature storage and logits") {
  al::AlignmentHeads heads({4, 6, 3, 0.07, true});
  ad::ParameterStore store;
  jm3d::Rng rng(1);
  heads.init_parameters(store, rng);
  CHECK(store.entry("align.log_tau").no_decay);
  CHECK(std::abs(heads.temperature(store) - 0.07) < 1e-15);
  ad::Tape tape;
  CHECK(std::abs(heads.inverse_temperature(tape, store).value()[0] - 1 / 0.07) < 1e-9);
  const auto logits =
      heads.parent_logits(tape, store, tape.constant(random_matrix(rng, 5, 4, true)));
  CHECK(logits.shape() == ad::Shape{5, 3});

  al::AlignmentHeads fixed({4, 6, 3, 1.0, false});
  ad::ParameterStore s2;
  fixed.init_parameters(s2, rng);
  CHECK_FALSE(s2.contains("align.log_tau"));
  CHECK(fixed.inverse_temperature(tape, s2).value()[0] == 1.0);
  CHECK_THROWS_AS(al::AlignmentHeads({4, 6, 3, 0.0, true}), jm3d::ConfigError);
}

namespace {

struct Fixture {
  al::AlignmentHeads heads{{4, 5, 3, 0.07, true}};
  ad::ParameterStore store;
  ad::Tensor views, text;
  std::vector<std::size_t> parents{0, 2, 1, 2};

  explicit Fixture(std::uint64_t seed) {
    jm3d::Rng rng(seed);
    heads.init_parameters(store, rng);
    store.add("proj", random_matrix(rng, 3, 4, false));
    views = random_matrix(rng, 8, 4, true);
    text = random_matrix(rng, 4, 4, true);
  }

  al::LossBreakdown loss(ad::Tape& tape, const ad::ParameterStore& p,
                         const al::LossOptions& opt) const {
    jm3d::Rng rng(99);
    ad::Tensor pts = random_matrix(rng, 4, 3, false);
    ad::Var point = ad::l2_normalize(
        ad::matmul(tape.constant(pts), p.bind(tape, "proj")));
    ad::Var joint = al::jma_fuse_batch(tape.constant(views), tape.constant(text), 2);
    return al::total_loss(tape, {point, joint, tape.constant(text), parents}, heads,
                          p, opt);
  }
};

}  // namespace

TEST_CASE("total_loss switches and composition") {
  Fixture f(3);
  ad::Tape tape;
  al::LossOptions opt;
  const auto full = f.loss(tape, f.store, opt);
  CHECK(std::abs(full.total.value()[0] - (full.contrastive + full.parent)) < 1e-12);
  CHECK(full.parent > 0.0);
  opt.parent_loss = false;
  const auto flat = f.loss(tape, f.store, opt);
  CHECK(flat.total.value()[0] == flat.contrastive);
  CHECK(flat.parent == 0.0);
  CHECK(flat.contrastive == full.contrastive);
}

TEST_CASE("total_loss is finite on random batches") {
  jm3d::Rng rng(77);
  int finite = 0;
  for (int t = 0; t < 1000; ++t) {
    Fixture f(rng.next_u64());
    for (const auto& name : f.store.names()) {
      for (double& v : f.store.mutable_value(name).values()) v *= rng.uniform(0.1, 5.0);
    }
    ad::Tape tape;
    const double v = f.loss(tape, f.store, {}).total.value()[0];
    if (std::isfinite(v)) ++finite;
  }
  CHECK(finite == 1000);
}

TEST_CASE("total_loss gradients match finite differences") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Fixture f(seed);
    const auto errors = ad::grad_check_parameters(
        [&](ad::Tape& tape, const ad::ParameterStore& p) {
          return f.loss(tape, p, {}).total;
        },
        f.store, 1e-6);
    for (const auto& [name, err] : errors) {
      INFO(name);
      CHECK(err < 1e-4);
    }
  }
}
