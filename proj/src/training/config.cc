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

#include "jm3d/training/config.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "jm3d/common/errors.h"
#include "jm3d/common/hashing.h"

namespace jm3d::training {
namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string bad_value(std::string_view key, std::string_view value) {
  return "config: invalid value '" + std::string(value) + "' for " +
         std::string(key);
}

double parse_double(std::string_view key, std::string_view value) {
  const std::string s(value);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw ConfigError(bad_value(key, value));
  return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  int base = 10;
  if (value.size() > 2 && value[0] == '0' && (value[1] == 'x' || value[1] == 'X')) {
    value.remove_prefix(2);
    base = 16;
  }
  const auto r = std::from_chars(value.data(), value.data() + value.size(), v, base);
  if (value.empty() || r.ec != std::errc() || r.ptr != value.data() + value.size()) {
    throw ConfigError(bad_value(key, value));
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw ConfigError(bad_value(key, value));
}

struct Field {
  std::function<void(TrainConfig&, std::string_view, std::string_view)> set;
  std::function<std::string(const TrainConfig&)> get;
};

template <typename T>
Field field(T TrainConfig::*member) {
  Field f;
  f.set = [member](TrainConfig& c, std::string_view k, std::string_view v) {
    if constexpr (std::is_same_v<T, bool>) {
      c.*member = parse_bool(k, v);
    } else if constexpr (std::is_same_v<T, double>) {
      c.*member = parse_double(k, v);
    } else {
      c.*member = static_cast<T>(parse_uint(k, v));
    }
  };
  f.get = [member](const TrainConfig& c) -> std::string {
    if constexpr (std::is_same_v<T, bool>) {
      return c.*member ? "true" : "false";
    } else if constexpr (std::is_same_v<T, double>) {
      return format_double(c.*member);
    } else {
      return std::to_string(c.*member);
    }
  };
  return f;
}

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> kFields = {
      {"batch_size", field(&TrainConfig::batch_size)},
      {"lr", field(&TrainConfig::lr)},
      {"epochs", field(&TrainConfig::epochs)},
      {"views", field(&TrainConfig::views)},
      {"omega", field(&TrainConfig::omega)},
      {"lambda1", field(&TrainConfig::lambda1)},
      {"lambda2", field(&TrainConfig::lambda2)},
      {"lambda3", field(&TrainConfig::lambda3)},
      {"weight_decay", field(&TrainConfig::weight_decay)},
      {"beta1", field(&TrainConfig::beta1)},
      {"beta2", field(&TrainConfig::beta2)},
      {"adam_eps", field(&TrainConfig::adam_eps)},
      {"seed", field(&TrainConfig::seed)},
      {"cis", field(&TrainConfig::cis)},
      {"htt", field(&TrainConfig::htt)},
      {"jma", field(&TrainConfig::jma)},
      {"embeddings", field(&TrainConfig::embeddings)},
      {"within_view", field(&TrainConfig::within_view)},
      {"temperature", field(&TrainConfig::temperature)},
      {"learn_temperature", field(&TrainConfig::learn_temperature)},
      {"symmetric", field(&TrainConfig::symmetric)},
      {"normalize", field(&TrainConfig::normalize)},
      {"point_hidden", field(&TrainConfig::point_hidden)},
      {"head_hidden", field(&TrainConfig::head_hidden)},
      {"embed_scale", field(&TrainConfig::embed_scale)},
      {"encoder_seed", field(&TrainConfig::encoder_seed)},
      {"vocab", field(&TrainConfig::vocab)},
      {"holdout", field(&TrainConfig::holdout)},
  };
  return kFields;
}

}  // namespace

void validate(const TrainConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("config: ") + what);
  };
  require(c.batch_size >= 2, "batch_size must be at least 2");
  require(std::isfinite(c.lr) && c.lr > 0, "lr must be positive");
  require(c.epochs >= 1, "epochs must be at least 1");
  require(c.views >= 1, "views must be at least 1");
  require(std::isfinite(c.omega) && c.omega > 0, "omega must be positive");
  require(std::isfinite(c.weight_decay) && c.weight_decay >= 0,
          "weight_decay must be nonnegative");
  require(c.beta1 >= 0 && c.beta1 < 1, "beta1 must lie in [0, 1)");
  require(c.beta2 >= 0 && c.beta2 < 1, "beta2 must lie in [0, 1)");
  require(std::isfinite(c.adam_eps) && c.adam_eps > 0, "adam_eps must be positive");
  require(std::isfinite(c.temperature) && c.temperature > 0,
          "temperature must be positive");
  require(c.point_hidden >= 1 && c.head_hidden >= 1, "hidden widths must be positive");
  require(std::isfinite(c.embed_scale) && c.embed_scale >= 0,
          "embed_scale must be nonnegative");
  require(c.vocab >= 1, "vocab must be positive");
  require(c.holdout >= 0 && c.holdout < 1, "holdout must lie in [0, 1)");
  for (double l : {c.lambda1, c.lambda2, c.lambda3}) {
    require(std::isfinite(l) && l >= 0, "lambda weights must be nonnegative");
  }
  require(c.lambda1 > 0 || c.lambda2 > 0 || c.lambda3 > 0,
          "at least one lambda weight must be positive");
}

void apply_setting(TrainConfig& config, std::string_view key, std::string_view value) {
  for (const auto& [name, f] : fields()) {
    if (name == key) {
      f.set(config, key, value);
      return;
    }
  }
  throw ConfigError("config: unknown key '" + std::string(key) + "'");
}

std::vector<std::pair<std::string, std::string>> to_key_values(const TrainConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, f] : fields()) out.emplace_back(name, f.get(config));
  return out;
}

std::string config_echo(const TrainConfig& config) {
  std::string out;
  for (const auto& [k, v] : to_key_values(config)) out += k + "=" + v + "\n";
  return out;
}

std::string config_hash(const TrainConfig& config) {
  return hex64(fnv1a64(config_echo(config)));
}

}  // namespace jm3d::training
