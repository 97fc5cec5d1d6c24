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

#ifndef AANET_CONFIG_HPP_
#define AANET_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "aanet/network.hpp"

namespace aanet {

struct TrainConfig {
  double lr = 0.05;
  double momentum = 0.9;
  // The learning rate is multiplied by this factor after every epoch.
  double lr_decay = 1.0;
  std::size_t epochs = 4;
  std::size_t batch = 32;
  // Initialization, data order and evaluation noise.
  std::uint64_t seed = 0;

  bool operator==(const TrainConfig&) const = default;
};

// source is "stripes", "shapes" or "idx". Synthetic sources generate
// train_size and test_size samples from data seed and data seed + 1; idx reads
// the four file paths.
struct DataConfig {
  std::string source = "stripes";
  std::string train_images;
  std::string train_labels;
  std::string test_images;
  std::string test_labels;
  std::size_t train_size = 512;
  std::size_t test_size = 256;
  std::uint64_t seed = 1;

  bool operator==(const DataConfig&) const = default;
};

struct EvalConfig {
  bool corruptions = true;
  int shift_max = 2;
  PaddingMode shift_padding = PaddingMode::kCircular;
  std::size_t way = 5;
  std::size_t shots = 1;
  std::size_t query = 5;
  std::size_t episodes = 20;

  bool operator==(const EvalConfig&) const = default;
};

struct ExperimentConfig {
  ArchSpec arch;
  PlacementConfig placement;
  TrainConfig train;
  DataConfig data;
  EvalConfig eval;

  bool operator==(const ExperimentConfig&) const = default;
};

// Keys absent from the JSON keep their defaults; unknown keys and values of
// the wrong type throw ConfigError. The result is validated.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

ExperimentConfig parse_config(std::string_view text);
std::string serialize_config(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

// Throws ConfigError for values no run can use.
void validate(const ExperimentConfig& config);

}  // namespace aanet

#endif  // AANET_CONFIG_HPP_
