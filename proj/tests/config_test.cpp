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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "aanet/error.hpp"
#include "random_config.hpp"

namespace aanet {
namespace {

TEST(ConfigTest, RandomizedRoundTrip) {
  std::mt19937_64 rng(2026);
  for (int i = 0; i < 100; ++i) {
    const ExperimentConfig c = testing::random_config(rng);
    const std::string text = serialize_config(c);
    const ExperimentConfig back = parse_config(text);
    ASSERT_EQ(back, c) << text;
    EXPECT_EQ(serialize_config(back), text);
  }
}

TEST(ConfigTest, EmptyObjectGivesDefaults) {
  EXPECT_EQ(parse_config("{}"), ExperimentConfig{});
  const ExperimentConfig c = parse_config(R"({"train": {"lr": 0.2}})");
  EXPECT_EQ(c.train.lr, 0.2);
  EXPECT_EQ(c.train.epochs, TrainConfig{}.epochs);
}

TEST(ConfigTest, UnknownKeysAreRejected) {
  for (const char* text : {R"({"trian": {}})", R"({"train": {"learning_rate": 0.1}})",
                           R"({"placement": {"skip_strided": {"variant": "none", "size": 3}}})",
                           R"({"arch": {"stages": [{"channels": 4, "blocks": 1, "width": 2}]}})",
                           R"({"placement": {"maxpool_blur_spec": {"k": 3, "pad": "zero"}}})"}) {
    EXPECT_THROW(parse_config(text), ConfigError) << text;
  }
}

TEST(ConfigTest, BadValuesAreRejected) {
  for (const char* text :
       {"not json", "[]", R"({"train": {"lr": "fast"}})", R"({"train": {"epochs": -1}})",
        R"({"train": {"batch": 2.5}})", R"({"train": {"lr": 0}})",
        R"({"train": {"momentum": 1.0}})", R"({"train": {"lr_decay": 1.5}})",
        R"({"placement": {"activation": "tanh"}})",
        R"({"placement": {"skip_strided": {"variant": "erf"}}})",
        R"({"placement": {"block_conv_strided": {"k": 4}}})",
        R"({"placement": {"conv1_stride": 3}})", R"({"arch": {"stages": []}})",
        R"({"arch": {"classes": 1}})", R"({"arch": {"conv_padding": "mirror"}})",
        R"({"data": {"source": "imagenet"}})", R"({"data": {"source": "idx"}})",
        R"({"data": {"train_size": 0}})", R"({"arch": {"input_channels": 3}})",
        R"({"eval": {"shift_max": 0}})", R"({"eval": {"way": 0}})"}) {
    EXPECT_THROW(parse_config(text), ConfigError) << text;
  }
}

TEST(ConfigTest, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "aanet_config_test.json";
  ExperimentConfig c;
  c.placement = PlacementConfig::best_model(5);
  c.train.seed = 12;
  std::ofstream(path) << serialize_config(c);
  EXPECT_EQ(load_config(path.string()), c);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config("/nonexistent/aanet.json"), ConfigError);
}

}  // namespace
}  // namespace aanet
