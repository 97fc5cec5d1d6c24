/* Copyright 2026 The AANet Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "aanet/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "aanet/error.hpp"

namespace aanet {

using nlohmann::json;

namespace {

// Reads the members of one JSON object, rejecting keys that nothing asks for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    known_.emplace_back(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError(where(key) + ": wrong type");
    }
  }

  // Unsigned integers reject negative and fractional numbers, which the
  // json library would otherwise convert silently.
  template <typename T>
  void get_unsigned(const char* key, T& out) {
    known_.emplace_back(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    if (!it->is_number_unsigned()) {
      throw ConfigError(where(key) + ": expected a non-negative integer");
    }
    out = it->template get<T>();
  }

  template <typename Fn>
  void get_with(const char* key, Fn&& fn) {
    known_.emplace_back(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    fn(*it, where(key));
  }

  template <typename E, typename Parse>
  void get_enum(const char* key, E& out, Parse parse) {
    get_with(key, [&](const json& v, const std::string& at) {
      if (!v.is_string()) throw ConfigError(at + ": expected a string");
      try {
        out = parse(v.get<std::string>());
      } catch (const ArgumentError& e) {
        throw ConfigError(at + ": " + e.what());
      } catch (const ConfigError& e) {
        throw ConfigError(at + ": " + e.what());
      }
    });
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      bool ok = false;
      for (const auto& k : known_) ok = ok || k == key;
      if (!ok) throw ConfigError(where(key) + ": unknown key");
    }
  }

  std::string where(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& j_;
  std::string path_;
  std::vector<std::string> known_;
};

BlurSpec read_blur(const json& j, const std::string& at, BlurSpec spec) {
  ObjectReader r(j, at);
  r.get("k", spec.k);
  r.get_enum("padding", spec.padding, parse_padding);
  r.finish();
  return spec;
}

json write_blur(const BlurSpec& spec) {
  return {{"k", spec.k}, {"padding", to_string(spec.padding)}};
}

GroupPlacement read_group(const json& j, const std::string& at) {
  GroupPlacement g;
  ObjectReader r(j, at);
  r.get_enum("variant", g.variant, parse_variant);
  r.get("k", g.blur.k);
  r.get_enum("padding", g.blur.padding, parse_padding);
  r.finish();
  return g;
}

json write_group(const GroupPlacement& g) {
  return {{"variant", to_string(g.variant)},
          {"k", g.blur.k},
          {"padding", to_string(g.blur.padding)}};
}

void read_arch(const json& j, ArchSpec& arch) {
  ObjectReader r(j, "arch");
  r.get_with("stages", [&](const json& v, const std::string& at) {
    if (!v.is_array()) throw ConfigError(at + ": expected an array");
    arch.stages.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      StageSpec s;
      ObjectReader sr(v[i], at + "[" + std::to_string(i) + "]");
      sr.get_unsigned("channels", s.channels);
      sr.get_unsigned("blocks", s.blocks);
      sr.finish();
      arch.stages.push_back(s);
    }
  });
  r.get_unsigned("input_channels", arch.input_channels);
  r.get_unsigned("input_size", arch.input_size);
  r.get_unsigned("classes", arch.classes);
  r.get_enum("conv_padding", arch.conv_padding, parse_padding);
  r.finish();
}

void read_placement(const json& j, PlacementConfig& p) {
  ObjectReader r(j, "placement");
  auto group = [&](const char* key, GroupPlacement& g) {
    r.get_with(key, [&](const json& v, const std::string& at) {
      g = read_group(v, at);
    });
  };
  group("initial_conv", p.initial_conv);
  group("block_conv_unstrided", p.block_conv_unstrided);
  group("block_conv_strided", p.block_conv_strided);
  group("skip_strided", p.skip_strided);
  r.get("maxpool_blur", p.maxpool_blur);
  r.get_with("maxpool_blur_spec", [&](const json& v, const std::string& at) {
    p.maxpool_blur_spec = read_blur(v, at, p.maxpool_blur_spec);
  });
  r.get_enum("activation", p.activation, parse_activation);
  r.get("conv1_stride", p.conv1_stride);
  r.finish();
}

void read_train(const json& j, TrainConfig& t) {
  ObjectReader r(j, "train");
  r.get("lr", t.lr);
  r.get("momentum", t.momentum);
  r.get("lr_decay", t.lr_decay);
  r.get_unsigned("epochs", t.epochs);
  r.get_unsigned("batch", t.batch);
  r.get_unsigned("seed", t.seed);
  r.finish();
}

void read_data(const json& j, DataConfig& d) {
  ObjectReader r(j, "data");
  r.get("source", d.source);
  r.get("train_images", d.train_images);
  r.get("train_labels", d.train_labels);
  r.get("test_images", d.test_images);
  r.get("test_labels", d.test_labels);
  r.get_unsigned("train_size", d.train_size);
  r.get_unsigned("test_size", d.test_size);
  r.get_unsigned("seed", d.seed);
  r.finish();
}

void read_eval(const json& j, EvalConfig& e) {
  ObjectReader r(j, "eval");
  r.get("corruptions", e.corruptions);
  r.get("shift_max", e.shift_max);
  r.get_enum("shift_padding", e.shift_padding, parse_padding);
  r.get_unsigned("way", e.way);
  r.get_unsigned("shots", e.shots);
  r.get_unsigned("query", e.query);
  r.get_unsigned("episodes", e.episodes);
  r.finish();
}

}  // namespace

void validate(const ExperimentConfig& c) {
  validate(c.arch);
  validate(c.placement);
  if (!(c.train.lr > 0.0)) throw ConfigError("train.lr must be > 0");
  if (!(c.train.momentum >= 0.0 && c.train.momentum < 1.0)) {
    throw ConfigError("train.momentum must lie in [0, 1)");
  }
  if (!(c.train.lr_decay > 0.0 && c.train.lr_decay <= 1.0)) {
    throw ConfigError("train.lr_decay must lie in (0, 1]");
  }
  if (c.train.batch == 0) throw ConfigError("train.batch must be >= 1");
  if (c.data.source == "idx") {
    if (c.data.train_images.empty() || c.data.train_labels.empty() ||
        c.data.test_images.empty() || c.data.test_labels.empty()) {
      throw ConfigError("data.source idx needs all four file paths");
    }
  } else if (c.data.source == "stripes" || c.data.source == "shapes") {
    if (c.data.train_size == 0 || c.data.test_size == 0) {
      throw ConfigError("data.train_size and data.test_size must be >= 1");
    }
    if (c.arch.input_channels != 1) {
      throw ConfigError("synthetic data is single-channel; set arch.input_channels to 1");
    }
  } else {
    throw ConfigError("data.source must be stripes, shapes or idx, got '" +
                      c.data.source + "'");
  }
  if (c.eval.shift_max < 1) throw ConfigError("eval.shift_max must be >= 1");
  if (c.eval.way == 0 || c.eval.shots == 0 || c.eval.query == 0) {
    throw ConfigError("eval.way, eval.shots and eval.query must be >= 1");
  }
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  ObjectReader r(j, "");
  r.get_with("arch", [&](const json& v, const std::string&) { read_arch(v, c.arch); });
  r.get_with("placement",
             [&](const json& v, const std::string&) { read_placement(v, c.placement); });
  r.get_with("train", [&](const json& v, const std::string&) { read_train(v, c.train); });
  r.get_with("data", [&](const json& v, const std::string&) { read_data(v, c.data); });
  r.get_with("eval", [&](const json& v, const std::string&) { read_eval(v, c.eval); });
  r.finish();
  try {
    validate(c);
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json stages = json::array();
  for (const auto& s : c.arch.stages) {
    stages.push_back({{"channels", s.channels}, {"blocks", s.blocks}});
  }
  const auto& p = c.placement;
  return {
      {"arch",
       {{"stages", stages},
        {"input_channels", c.arch.input_channels},
        {"input_size", c.arch.input_size},
        {"classes", c.arch.classes},
        {"conv_padding", to_string(c.arch.conv_padding)}}},
      {"placement",
       {{"initial_conv", write_group(p.initial_conv)},
        {"block_conv_unstrided", write_group(p.block_conv_unstrided)},
        {"block_conv_strided", write_group(p.block_conv_strided)},
        {"skip_strided", write_group(p.skip_strided)},
        {"maxpool_blur", p.maxpool_blur},
        {"maxpool_blur_spec", write_blur(p.maxpool_blur_spec)},
        {"activation", to_string(p.activation)},
        {"conv1_stride", p.conv1_stride}}},
      {"train",
       {{"lr", c.train.lr},
        {"momentum", c.train.momentum},
        {"lr_decay", c.train.lr_decay},
        {"epochs", c.train.epochs},
        {"batch", c.train.batch},
        {"seed", c.train.seed}}},
      {"data",
       {{"source", c.data.source},
        {"train_images", c.data.train_images},
        {"train_labels", c.data.train_labels},
        {"test_images", c.data.test_images},
        {"test_labels", c.data.test_labels},
        {"train_size", c.data.train_size},
        {"test_size", c.data.test_size},
        {"seed", c.data.seed}}},
      {"eval",
       {{"corruptions", c.eval.corruptions},
        {"shift_max", c.eval.shift_max},
        {"shift_padding", to_string(c.eval.shift_padding)},
        {"way", c.eval.way},
        {"shots", c.eval.shots},
        {"query", c.eval.query},
        {"episodes", c.eval.episodes}}},
  };
}

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

std::string serialize_config(const ExperimentConfig& config) {
  // The json writer emits the shortest text that reads back to the same double.
  return config_to_json(config).dump(2) + "\n";
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace aanet
