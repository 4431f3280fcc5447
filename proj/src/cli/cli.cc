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

#include "jm3d/cli/cli.h"

#include <cmath>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "jm3d/alignment/losses.h"
#include "jm3d/autodiff/grad_check.h"
#include "jm3d/cli/ablation.h"
#include "jm3d/cli/config_file.h"
#include "jm3d/common/binary_io.h"
#include "jm3d/common/errors.h"
#include "jm3d/common/hashing.h"
#include "jm3d/common/version.h"
#include "jm3d/dataset/category_tree.h"
#include "jm3d/dataset/manifest.h"
#include "jm3d/dataset/split.h"
#include "jm3d/dataset/synthetic.h"
#include "jm3d/encoders/view_embedding.h"
#include "jm3d/evaluation/eval_sets.h"
#include "jm3d/evaluation/report.h"
#include "jm3d/evaluation/zero_shot.h"
#include "jm3d/training/checkpoint.h"
#include "jm3d/training/trainer.h"

namespace jm3d::cli {
namespace fs = std::filesystem;
namespace {

// Training flags shared by pretrain and ablate. Values stay as text until
// they are layered over the defaults and the config file.
struct TrainFlags {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::map<std::string, bool> disabled;
  std::vector<std::string> sets;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "key = value config file");
    const std::pair<const char*, const char*> keyed[] = {
        {"--epochs", "epochs"},       {"--batch", "batch_size"},
        {"--lr", "lr"},               {"--views", "views"},
        {"--omega", "omega"},         {"--lambda1", "lambda1"},
        {"--lambda2", "lambda2"},     {"--lambda3", "lambda3"},
        {"--seed", "seed"},           {"--holdout", "holdout"},
        {"--weight-decay", "weight_decay"}, {"--temperature", "temperature"},
    };
    for (const auto& [flag, key] : keyed) {
      options[key] = app->add_option(flag, values[key]);
    }
    const std::pair<const char*, const char*> switches[] = {
        {"--no-jma", "jma"},   {"--no-htt", "htt"},
        {"--no-cis", "cis"},   {"--no-embed", "embeddings"},
        {"--no-within-view", "within_view"},
    };
    for (const auto& [flag, key] : switches) {
      app->add_flag(flag, disabled[key], std::string("turn off ") + key);
    }
    app->add_option("--set", sets, "extra key=value config overrides")->take_all();
  }

  training::TrainConfig resolve(training::TrainConfig config) const {
    if (!config_file.empty()) apply_config_file(config, config_file);
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) training::apply_setting(config, key, values.at(key));
    }
    for (const auto& [key, off] : disabled) {
      if (off) training::apply_setting(config, key, "false");
    }
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value: " + kv);
      std::string key = kv.substr(0, eq);
      std::replace(key.begin(), key.end(), '-', '_');
      training::apply_setting(config, key, kv.substr(eq + 1));
    }
    training::validate(config);
    return config;
  }
};

void print_header(std::ostream& out, const std::string& command,
                  const std::string& hash, std::uint64_t seed) {
  out << "# jm3d " << kVersion << " command=" << command << " config=" << hash
      << " seed=" << seed << "\n";
}

training::Model model_from(const training::Checkpoint& c) {
  return training::Model(c.config, c.dim, c.parents, c.params);
}

void check_dim(const dataset::Dataset& data, const training::Checkpoint& c) {
  if (data.dim != c.dim) {
    throw ValidationError("dataset feature dim " + std::to_string(data.dim) +
                          " does not match checkpoint dim " + std::to_string(c.dim));
  }
}

std::vector<std::size_t> select_split(const dataset::Dataset& data,
                                      const dataset::CategoryTree& tree,
                                      const training::TrainConfig& config,
                                      const std::string& which) {
  if (which == "all") {
    std::vector<std::size_t> v(data.samples.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
  }
  const auto split = dataset::split_holdout(data, tree, config.holdout, config.seed);
  if (which == "train") return split.train;
  if (which == "test") {
    if (split.test.empty()) throw ValidationError("the holdout split is empty");
    return split.test;
  }
  throw ConfigError("--split must be train, test or all");
}

// ---- gen-data ------------------------------------------------------------

struct GenDataArgs {
  std::string out;
  dataset::SynthConfig synth;
  std::uint64_t seed = 0;
  std::uint64_t encoder_seed = training::TrainConfig{}.encoder_seed;
  std::size_t vocab = training::TrainConfig{}.vocab;
};

int cmd_gen_data(const GenDataArgs& a, std::ostream& out) {
  dataset::SynthConfig synth = a.synth;
  std::unique_ptr<encoders::FrozenTextEncoder> text;
  if (synth.anchor_weight > 0.0) {
    text = std::make_unique<encoders::FrozenTextEncoder>(
        encoders::FrozenEncoderSpec{a.encoder_seed, a.vocab, synth.dim});
    synth.class_anchor = [&text](const std::string& name) {
      return text->encode(training::make_prompt(name)).values;
    };
  }
  std::ostringstream echo;
  echo << "parents=" << synth.parents << "\nsubs=" << synth.subs_per_parent
       << "\nper_sub=" << synth.samples_per_sub << "\npoints=" << synth.points
       << "\ndim=" << synth.dim << "\nmissing_sub=" << synth.missing_sub_fraction
       << "\nanchor_weight=" << synth.anchor_weight
       << "\nencoder_seed=" << a.encoder_seed << "\nvocab=" << a.vocab << "\n";
  print_header(out, "gen-data", hex64(fnv1a64(echo.str())), a.seed);
  const auto data = dataset::synth_generate(synth, a.seed, a.out);
  const auto tree = dataset::CategoryTree::from_samples(data.samples);
  out << "wrote " << data.samples.size() << " samples (" << tree.parent_count()
      << " parents, " << evaluation::used_leaf_names(data, tree).size()
      << " subcategories, dim " << data.dim << ") to " << a.out << "\n";
  return kExitOk;
}

// ---- pretrain ------------------------------------------------------------

struct PretrainArgs {
  std::string data;
  std::string out;
  TrainFlags flags;
};

std::string epoch_jsonl(const training::TrainConfig& c,
                        const std::vector<training::EpochMetrics>& epochs) {
  std::string s = nlohmann::json{{"type", "header"},
                                 {"version", kVersion},
                                 {"command", "pretrain"},
                                 {"config_hash", training::config_hash(c)},
                                 {"seed", c.seed}}
                      .dump() +
                  "\n";
  for (const auto& e : epochs) {
    s += nlohmann::json{{"type", "epoch"},
                        {"epoch", e.epoch},
                        {"steps", e.steps},
                        {"mean_loss", e.mean_loss},
                        {"mean_contrastive", e.mean_contrastive},
                        {"mean_parent", e.mean_parent},
                        {"last_lr", e.last_lr},
                        {"temperature", e.temperature}}
             .dump() +
         "\n";
  }
  return s;
}

int cmd_pretrain(const PretrainArgs& a, std::ostream& out) {
  const auto config = a.flags.resolve({});
  const auto data = dataset::load_manifest(a.data);
  const auto tree = dataset::CategoryTree::from_samples(data.samples);
  const auto split = dataset::split_holdout(data, tree, config.holdout, config.seed);
  print_header(out, "pretrain", training::config_hash(config), config.seed);
  out << "training on " << split.train.size() << " samples, holding out "
      << split.test.size() << "\n";

  const fs::path dir(a.out);
  std::vector<std::vector<std::string>> rows;
  const auto result = training::train(
      config, data, tree, split.train,
      [&](const training::EpochMetrics& m, const training::Trainer& t) {
        save_checkpoint(t.checkpoint(), dir / "checkpoint.bin");
        out << "epoch " << m.epoch << "  loss " << evaluation::fixed(m.mean_loss, 5)
            << "  tau " << evaluation::fixed(m.temperature, 4) << "\n";
      });
  write_file(dir / "metrics.jsonl", epoch_jsonl(config, result.epochs));
  const auto ckpt_path = (dir / "checkpoint.bin").string();

  if (!split.test.empty()) {
    const auto model = model_from(result.checkpoint);
    const auto classes = evaluation::used_leaf_names(data, tree);
    std::vector<std::size_t> ks{1};
    if (classes.size() >= 5) ks.push_back(5);
    const auto zs = evaluation::evaluate_zero_shot(model, data, split.test, classes,
                                                   evaluation::PromptTemplate(), ks);
    std::vector<evaluation::MetricRecord> recs;
    for (std::size_t i = 0; i < zs.ks.size(); ++i) {
      recs.push_back({"holdout", zs.ks[i], zs.accuracy[i], zs.evaluated, config.seed,
                      ckpt_path});
    }
    write_file(dir / "eval.jsonl",
               evaluation::report_jsonl({"pretrain", training::config_hash(config),
                                         config.seed},
                                        recs));
    out << evaluation::metric_table(recs);
  }
  out << "checkpoint: " << ckpt_path << "\n";
  return kExitOk;
}

// ---- eval-zeroshot -------------------------------------------------------

struct EvalArgs {
  std::string checkpoint;
  std::string data;
  std::string set = "data";
  std::size_t topk = 5;
  std::string split = "test";
  std::string prompt = std::string(training::kPromptTemplate);
  std::string out;
};

evaluation::EvalSet resolve_set(const std::string& name, const dataset::Dataset& data,
                                const dataset::CategoryTree& tree) {
  const auto& sets = evaluation::modelnet_eval_sets();
  if (name == "all") return sets.all;
  if (name == "medium") return sets.medium;
  if (name == "hard") return sets.hard;
  if (name == "data") return {"data", evaluation::used_leaf_names(data, tree)};
  if (name.rfind("custom:", 0) == 0) return evaluation::load_custom_set(name.substr(7));
  throw ConfigError("--set must be all, medium, hard, data or custom:FILE");
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const auto ckpt = training::load_checkpoint(a.checkpoint);
  const auto data = dataset::load_manifest(a.data);
  check_dim(data, ckpt);
  const auto tree = dataset::CategoryTree::from_samples(data.samples);
  const auto set = resolve_set(a.set, data, tree);
  const auto indices = select_split(data, tree, ckpt.config, a.split);
  if (a.topk == 0 || a.topk > set.classes.size()) {
    throw ConfigError("--topk must lie in [1, " + std::to_string(set.classes.size()) + "]");
  }
  std::vector<std::size_t> ks{1};
  if (a.topk > 1) ks.push_back(a.topk);
  const auto model = model_from(ckpt);
  const auto zs = evaluation::evaluate_zero_shot(model, data, indices, set.classes,
                                                 evaluation::PromptTemplate(a.prompt), ks);
  print_header(out, "eval-zeroshot", training::config_hash(ckpt.config), ckpt.config.seed);
  std::vector<evaluation::MetricRecord> recs;
  for (std::size_t i = 0; i < zs.ks.size(); ++i) {
    recs.push_back({set.name, zs.ks[i], zs.accuracy[i], zs.evaluated, ckpt.config.seed,
                    a.checkpoint});
  }
  out << evaluation::metric_table(recs);
  if (zs.skipped > 0) out << "skipped " << zs.skipped << " samples outside the class list\n";
  if (!a.out.empty()) {
    write_file(fs::path(a.out) / "eval.jsonl",
               evaluation::report_jsonl({"eval-zeroshot", training::config_hash(ckpt.config),
                                         ckpt.config.seed},
                                        recs));
  }
  return kExitOk;
}

// ---- retrieve ------------------------------------------------------------

struct RetrieveArgs {
  std::string checkpoint;
  std::string data;
  std::string split = "test";
  std::string query;
  std::size_t view = 0;
  std::size_t topk = 3;
};

int cmd_retrieve(const RetrieveArgs& a, std::ostream& out) {
  const auto ckpt = training::load_checkpoint(a.checkpoint);
  const auto data = dataset::load_manifest(a.data);
  check_dim(data, ckpt);
  const auto tree = dataset::CategoryTree::from_samples(data.samples);
  const auto indices = select_split(data, tree, ckpt.config, a.split);
  const auto model = model_from(ckpt);
  print_header(out, "retrieve", training::config_hash(ckpt.config), ckpt.config.seed);

  if (a.query.empty()) {
    const auto r = evaluation::evaluate_retrieval(model, data, tree, indices);
    out << evaluation::format_table(
        {"split", "queries", "top1_class%"},
        {{a.split, std::to_string(r.queries), evaluation::fixed(100 * r.top1_class_accuracy, 2)}});
    return kExitOk;
  }
  const dataset::TripletSample* q = nullptr;
  for (const auto& s : data.samples) {
    if (s.id == a.query) q = &s;
  }
  if (!q) throw ValidationError("no sample with id '" + a.query + "'");
  if (a.view >= q->views.size()) {
    throw ValidationError("sample " + q->id + " has " + std::to_string(q->views.size()) +
                          " views");
  }
  const auto& view = q->views[a.view];
  const auto f = encoders::embed_view(model.image_encoder().encode(view), view.angle_deg,
                                      model.tables());
  std::vector<encoders::FeatureVec> gallery;
  std::vector<std::string> ids;
  std::map<std::string, const dataset::TripletSample*> by_id;
  for (std::size_t i : indices) {
    gallery.push_back(model.encode_cloud(data.samples[i].cloud));
    ids.push_back(data.samples[i].id);
    by_id[data.samples[i].id] = &data.samples[i];
  }
  if (a.topk == 0 || a.topk > ids.size()) {
    throw ConfigError("--topk must lie in [1, " + std::to_string(ids.size()) + "]");
  }
  const auto batch = encoders::stack(gallery);
  const auto top = evaluation::retrieve_by_image(f.values, batch.rows, ids, a.topk);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < top.size(); ++r) {
    const auto* s = by_id.at(top[r]);
    rows.push_back({std::to_string(r + 1), s->id, s->parent, s->sub.value_or("-")});
  }
  out << "query " << q->id << " view " << a.view << " (" << view.angle_deg << " deg "
      << dataset::view_kind_name(view.kind) << ")\n";
  out << evaluation::format_table({"rank", "id", "parent", "sub"}, rows);
  return kExitOk;
}

// ---- gradcheck -----------------------------------------------------------

struct GradcheckArgs {
  std::uint64_t seed = 1;
  std::size_t dim = 16;
  std::size_t views = 2;
  std::size_t batch = 4;
  std::size_t hidden = 8;
  double eps = 1e-6;
  double tol = 1e-4;
};

int cmd_gradcheck(const GradcheckArgs& a, std::ostream& out) {
  if (a.batch < 2) throw ConfigError("--batch must be at least 2");
  dataset::SynthConfig synth;
  synth.parents = 2;
  synth.subs_per_parent = 2;
  synth.samples_per_sub = (a.batch + 3) / 4;
  synth.points = 32;
  synth.dim = a.dim;
  const auto data = dataset::synth_samples(synth, a.seed);
  const auto tree = dataset::CategoryTree::from_samples(data.samples);
  training::TrainConfig c;
  c.seed = a.seed;
  c.views = a.views;
  c.batch_size = a.batch;
  c.point_hidden = a.hidden;
  c.head_hidden = a.hidden;
  training::validate(c);
  std::vector<std::size_t> all(data.samples.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const training::Trainer trainer(c, data, tree, all);
  std::vector<std::size_t> positions(a.batch);
  for (std::size_t i = 0; i < a.batch; ++i) positions[i] = i;
  const auto options = training::loss_options(c);
  const auto& model = trainer.model();
  const auto errors = autodiff::grad_check_parameters(
      [&](autodiff::Tape& tape, const autodiff::ParameterStore& p) {
        Rng rng(a.seed);
        const auto b = training::build_batch(tape, model, p, trainer.data(), positions, rng);
        return alignment::total_loss(tape, b, model.heads(), p, options).total;
      },
      model.params(), a.eps);
  print_header(out, "gradcheck", training::config_hash(c), a.seed);
  double worst = 0.0;
  std::vector<std::vector<std::string>> rows;
  for (const auto& [name, err] : errors) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", err);
    rows.push_back({name, std::to_string(model.params().value(name).size()), buf});
    worst = std::max(worst, err);
  }
  out << evaluation::format_table({"parameter", "size", "max_rel_error"}, rows);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", worst);
  out << "max relative error: " << buf << " (tolerance " << a.tol << ")\n";
  if (!(worst < a.tol)) {
    out << "gradient check FAILED\n";
    return kExitNumeric;
  }
  out << "gradient check passed\n";
  return kExitOk;
}

// ---- ablate --------------------------------------------------------------

struct AblateArgs {
  std::string data;
  std::string axis = "all";
  std::size_t seeds = 1;
  std::string out;
  TrainFlags flags;
};

int cmd_ablate(const AblateArgs& a, std::ostream& out) {
  const auto base = a.flags.resolve({});
  if (a.seeds == 0) throw ConfigError("--seeds must be at least 1");
  const auto variants = ablation_variants(base, a.axis);
  const auto data = dataset::load_manifest(a.data);
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < a.seeds; ++i) seeds.push_back(base.seed + i);
  print_header(out, "ablate", training::config_hash(base), base.seed);
  const auto rows = run_ablation(variants, data, seeds,
                                 [&](const std::string& v, std::uint64_t s, double acc) {
                                   out << "  " << v << " seed " << s << ": top1 "
                                       << evaluation::fixed(100 * acc, 2) << "%\n";
                                 });
  out << ablation_table(variants, rows);
  if (!a.out.empty()) {
    std::vector<evaluation::MetricRecord> recs;
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < seeds.size(); ++i) {
        recs.push_back({r.name, 1, r.top1[i], 0, seeds[i], ""});
      }
    }
    write_file(fs::path(a.out) / "ablation.jsonl",
               evaluation::report_jsonl({"ablate", training::config_hash(base), base.seed},
                                        recs));
  }
  return kExitOk;
}

// ---- export-features -----------------------------------------------------

struct ExportArgs {
  std::string checkpoint;
  std::string data;
  std::string out;
};

int cmd_export(const ExportArgs& a, std::ostream& out) {
  const auto ckpt = training::load_checkpoint(a.checkpoint);
  const auto data = dataset::load_manifest(a.data);
  check_dim(data, ckpt);
  const auto model = model_from(ckpt);
  std::vector<double> values;
  std::string ids;
  for (const auto& s : data.samples) {
    const auto f = model.encode_cloud(s.cloud);
    values.insert(values.end(), f.values.begin(), f.values.end());
    ids += s.id + "\n";
  }
  const fs::path path(a.out);
  write_file(path, dataset::encode_features(ckpt.dim, values));
  write_file(path.string() + ".ids", ids);
  print_header(out, "export-features", training::config_hash(ckpt.config),
               ckpt.config.seed);
  out << "wrote " << data.samples.size() << " x " << ckpt.dim << " point features to "
      << a.out << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tri-modal point cloud / image / text alignment at desk scale", "jm3d"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  GenDataArgs gen;
  auto* g = app.add_subcommand("gen-data", "write a synthetic triplet dataset");
  g->add_option("--out", gen.out, "output directory")->required();
  g->add_option("--parents", gen.synth.parents);
  g->add_option("--subs", gen.synth.subs_per_parent);
  g->add_option("--per-sub", gen.synth.samples_per_sub);
  g->add_option("--points", gen.synth.points);
  g->add_option("--dim", gen.synth.dim);
  g->add_option("--seed", gen.seed);
  g->add_option("--missing-sub", gen.synth.missing_sub_fraction,
                "fraction of samples without a subcategory label");
  g->add_option("--anchor-weight", gen.synth.anchor_weight,
                "pull of view features towards the class text feature (0 = none)");
  g->add_option("--encoder-seed", gen.encoder_seed);
  g->add_option("--vocab", gen.vocab);

  PretrainArgs pre;
  auto* p = app.add_subcommand("pretrain", "train the point encoder and heads");
  p->add_option("--data", pre.data, "dataset directory or manifest")->required();
  p->add_option("--out", pre.out, "output directory")->required();
  pre.flags.attach(p);

  EvalArgs ev;
  auto* e = app.add_subcommand("eval-zeroshot", "zero-shot classification");
  e->add_option("--checkpoint", ev.checkpoint)->required();
  e->add_option("--data", ev.data)->required();
  e->add_option("--set", ev.set, "all | medium | hard | data | custom:FILE");
  e->add_option("--topk", ev.topk);
  e->add_option("--split", ev.split, "test | train | all");
  e->add_option("--template", ev.prompt, "prompt with one [CLASS] slot");
  e->add_option("--out", ev.out, "directory for eval.jsonl");

  RetrieveArgs rt;
  auto* r = app.add_subcommand("retrieve", "image to point cloud retrieval");
  r->add_option("--checkpoint", rt.checkpoint)->required();
  r->add_option("--data", rt.data)->required();
  r->add_option("--split", rt.split, "test | train | all");
  r->add_option("--query", rt.query, "sample id whose view is the query");
  r->add_option("--view", rt.view, "view record index of the query sample");
  r->add_option("--topk", rt.topk);

  GradcheckArgs gc;
  auto* c = app.add_subcommand("gradcheck", "finite-difference check of the full loss");
  c->add_option("--seed", gc.seed);
  c->add_option("--dim", gc.dim);
  c->add_option("--views", gc.views);
  c->add_option("--batch", gc.batch);
  c->add_option("--hidden", gc.hidden);
  c->add_option("--eps", gc.eps);
  c->add_option("--tol", gc.tol);

  AblateArgs ab;
  auto* a = app.add_subcommand("ablate", "train with switches off and compare");
  a->add_option("--data", ab.data)->required();
  a->add_option("--axis", ab.axis, "cis | embeddings | within-view | htt | jma | all");
  a->add_option("--seeds", ab.seeds, "number of seeds, counting up from --seed");
  a->add_option("--out", ab.out, "directory for ablation.jsonl");
  ab.flags.attach(a);

  ExportArgs ex;
  auto* x = app.add_subcommand("export-features", "write point features of every sample");
  x->add_option("--checkpoint", ex.checkpoint)->required();
  x->add_option("--data", ex.data)->required();
  x->add_option("--out", ex.out, "feature file")->required();

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_gen_data(gen, out);
    if (p->parsed()) return cmd_pretrain(pre, out);
    if (e->parsed()) return cmd_eval(ev, out);
    if (r->parsed()) return cmd_retrieve(rt, out);
    if (c->parsed()) return cmd_gradcheck(gc, out);
    if (a->parsed()) return cmd_ablate(ab, out);
    if (x->parsed()) return cmd_export(ex, out);
  } catch (const ConfigError& ce) {
    err << "error: " << ce.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& ne) {
    err << "numeric error: " << ne.what() << "\n";
    return kExitNumeric;
  } catch (const Error& de) {
    err << "error: " << de.what() << "\n";
    return kExitData;
  } catch (const std::exception& se) {
    err << "error: " << se.what() << "\n";
    return kExitData;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace jm3d::cli
