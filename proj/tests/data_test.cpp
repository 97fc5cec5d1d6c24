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

#include "aanet/data.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "aanet/error.hpp"
#include "aanet/spectral.hpp"

namespace aanet {
namespace {

using Bytes = std::vector<unsigned char>;

// Two 2x2 images and their labels, assembled by hand.
const Bytes kImages = {0x00, 0x00, 0x08, 0x03, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2,
                       0, 51, 102, 255,  //
                       17, 34, 200, 1};
const Bytes kLabels = {0x00, 0x00, 0x08, 0x01, 0, 0, 0, 2, 3, 1};

TEST(IdxTest, HandFixture) {
  const Dataset d = parse_idx(kImages, kLabels);
  ASSERT_EQ(d.images.shape(), (Shape{2, 1, 2, 2}));
  const double expected[8] = {0, 51, 102, 255, 17, 34, 200, 1};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(d.images[i], expected[i] / 255.0);
  EXPECT_EQ(d.labels, (std::vector<int>{3, 1}));
  EXPECT_EQ(d.classes, 4u);
}

TEST(IdxTest, EncodeIsTheInverse) {
  const Dataset d = parse_idx(kImages, kLabels);
  EXPECT_EQ(encode_idx_images(d.images), kImages);
  EXPECT_EQ(encode_idx_labels(d.labels), kLabels);
}

TEST(IdxTest, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path();
  const Dataset d = parse_idx(kImages, kLabels);
  write_idx(dir / "aanet_idx_images", dir / "aanet_idx_labels", d);
  const Dataset back = load_idx(dir / "aanet_idx_images", dir / "aanet_idx_labels");
  EXPECT_EQ(back.images, d.images);
  EXPECT_EQ(back.labels, d.labels);
  std::filesystem::remove(dir / "aanet_idx_images");
  std::filesystem::remove(dir / "aanet_idx_labels");
  EXPECT_THROW(load_idx(dir / "aanet_missing_images", dir / "aanet_missing_labels"), DataError);
}

TEST(IdxTest, Errors) {
  Bytes bad = kImages;
  bad[3] = 0x01;
  EXPECT_THROW(parse_idx(bad, kLabels), DataError);
  bad = kLabels;
  bad[3] = 0x03;
  EXPECT_THROW(parse_idx(kImages, bad), DataError);
  bad = kImages;
  bad.pop_back();
  EXPECT_THROW(parse_idx(bad, kLabels), DataError);
  EXPECT_THROW(parse_idx(Bytes(kImages.begin(), kImages.begin() + 10), kLabels), DataError);
  // Three labels for two images.
  const Bytes three = {0x00, 0x00, 0x08, 0x01, 0, 0, 0, 3, 3, 1, 0};
  EXPECT_THROW(parse_idx(kImages, three), DataError);
}

TEST(SyntheticTest, Deterministic) {
  for (Generator g : {Generator::kStripes, Generator::kShapes}) {
    const Dataset a = make_synthetic(g, 20, 4, 16, 5);
    const Dataset b = make_synthetic(g, 20, 4, 16, 5);
    const Dataset c = make_synthetic(g, 20, 4, 16, 6);
    EXPECT_EQ(a.images, b.images);
    EXPECT_EQ(a.labels, b.labels);
    EXPECT_FALSE(a.images == c.images);
    for (double v : a.images.data()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(SyntheticTest, ClassBalanced) {
  const Dataset d = make_synthetic(Generator::kStripes, 103, 10, 16, 1);
  std::vector<int> counts(10, 0);
  for (int l : d.labels) ++counts[static_cast<std::size_t>(l)];
  for (int c : counts) {
    EXPECT_GE(c, 10);
    EXPECT_LE(c, 11);
  }
  EXPECT_EQ(d.classes, 10u);
}

TEST(SyntheticTest, StripesCarryAboveNyquistEnergy) {
  for (std::size_t classes : {4u, 10u, 16u}) {
    const Dataset d = make_synthetic(Generator::kStripes, 256, classes, 32, 1);
    double sum = 0.0;
    for (std::size_t n = 0; n < d.size(); ++n) {
      sum += aliased_energy(d.images.plane(n, 0), 32, 32, 2).fraction;
    }
    EXPECT_GT(sum / static_cast<double>(d.size()), 0.3) << classes << " classes";
  }
}

TEST(SyntheticTest, StripesAreCircularlyPeriodic) {
  // Integer cycles: the last and first rows are neighbours like any other pair.
  const Dataset d = make_synthetic(Generator::kStripes, 8, 4, 32, 2);
  for (std::size_t n = 0; n < d.size(); ++n) {
    const auto p = d.images.plane(n, 0);
    double inner = 0.0, wrap = 0.0;
    for (std::size_t j = 0; j < 32; ++j) {
      inner += std::abs(p[1 * 32 + j] - p[0 * 32 + j]);
      wrap += std::abs(p[0 * 32 + j] - p[31 * 32 + j]);
    }
    EXPECT_LT(std::abs(inner - wrap), 32 * 0.8);
  }
}

TEST(SyntheticTest, GeneratorNames) {
  EXPECT_EQ(parse_generator("stripes"), Generator::kStripes);
  EXPECT_EQ(parse_generator(to_string(Generator::kShapes)), Generator::kShapes);
  EXPECT_THROW(parse_generator("noise"), ConfigError);
  EXPECT_THROW(make_synthetic(Generator::kStripes, 4, 1, 16, 0), ConfigError);
}

}  // namespace
}  // namespace aanet
