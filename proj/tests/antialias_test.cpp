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

#include "aanet/antialias.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "aanet/error.hpp"
#include "aanet/spectral.hpp"
#include "test_util.hpp"

namespace aanet {
namespace {

using testing::max_abs_diff;
using testing::random_tensor;

TEST(AntialiasTest, BinomialKernels) {
  EXPECT_EQ(binomial_kernel(1), (std::vector<double>{1.0}));
  EXPECT_EQ(binomial_kernel(3), (std::vector<double>{0.25, 0.5, 0.25}));
  EXPECT_EQ(binomial_kernel(5), (std::vector<double>{1 / 16.0, 4 / 16.0, 6 / 16.0, 4 / 16.0, 1 / 16.0}));
  for (int k : {0, 2, 4, 9, -1}) EXPECT_THROW(binomial_kernel(k), ArgumentError) << k;
}

TEST(AntialiasTest, KernelInvariants) {
  for (int k : {1, 3, 5, 7}) {
    const auto row = binomial_kernel(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      EXPECT_GE(row[i], 0.0);
      EXPECT_EQ(row[i], row[row.size() - 1 - i]);
      sum += row[i];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    const Tensor k2 = blur_kernel_2d(k);
    ASSERT_EQ(k2.shape(), (Shape{1, 1, static_cast<std::size_t>(k), static_cast<std::size_t>(k)}));
    double sum2 = 0.0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        EXPECT_EQ(k2.at(0, 0, i, j), row[i] * row[j]);
        sum2 += k2.at(0, 0, i, j);
      }
    EXPECT_NEAR(sum2, 1.0, 1e-12);
  }
}

TEST(AntialiasTest, FrequencyResponseIsMonotone) {
  for (int k : {3, 5, 7}) {
    const auto row = binomial_kernel(k);
    double prev = 2.0;
    for (int i = 0; i <= 1024; ++i) {
      const double w = std::numbers::pi * i / 1024.0;
      std::complex<double> h = 0.0;
      for (std::size_t n = 0; n < row.size(); ++n) {
        h += row[n] * std::exp(std::complex<double>(0, -w * static_cast<double>(n)));
      }
      const double mag = std::abs(h);
      EXPECT_NEAR(mag, std::pow((1 + std::cos(w)) / 2, (k - 1) / 2.0), 1e-12);
      EXPECT_LE(mag, prev + 1e-15);
      prev = mag;
    }
  }
}

TEST(AntialiasTest, IdentityAndConstants) {
  const Tensor x = random_tensor({2, 3, 6, 6}, 1);
  EXPECT_EQ(blur(x, {1, PaddingMode::kReflect}), x);
  for (int k : {3, 5, 7}) {
    for (PaddingMode m : {PaddingMode::kReflect, PaddingMode::kCircular}) {
      const Tensor y = blur(Tensor({1, 2, 8, 8}, 0.3), {k, m});
      for (double v : y.data()) EXPECT_NEAR(v, 0.3, 1e-15);
    }
  }
}

TEST(AntialiasTest, NyquistPatternIsAnnihilated) {
  Tensor x({1, 1, 8, 8});
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) x.at(0, 0, i, j) = (i + j) % 2 ? -1.0 : 1.0;
  const Tensor y = blur(x, {3, PaddingMode::kCircular});
  for (double v : y.data()) EXPECT_LT(std::abs(v), 1e-12);
}

TEST(AntialiasTest, BlurNeverAddsAliasedEnergy) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    const Tensor x = random_tensor({1, 1, 8, 8}, t);
    const double before = aliased_energy(x, 2).above_nyquist_energy;
    for (int k : {3, 5, 7}) {
      const Tensor y = blur(x, {k, PaddingMode::kCircular});
      EXPECT_LE(aliased_energy(y, 2).above_nyquist_energy, before + 1e-9);
    }
  }
}

TEST(AntialiasTest, BlurBackwardIsTheAdjoint) {
  for (PaddingMode m : {PaddingMode::kReflect, PaddingMode::kCircular, PaddingMode::kZero}) {
    const Tensor x = random_tensor({2, 2, 7, 6}, 3);
    const BlurSpec spec{5, m};
    const Tensor g = random_tensor(x.shape(), 4);
    EXPECT_NEAR(testing::dot(blur(x, spec), g),
                testing::dot(x, blur_backward(g, x.shape(), spec)), 1e-12);
  }
}

TEST(AntialiasTest, StagePlans) {
  using K = StageKind;
  auto kinds = [](const std::vector<Stage>& plan) {
    std::vector<K> out;
    for (const Stage& s : plan) out.push_back(s.kind);
    return out;
  };
  EXPECT_EQ(kinds(stage_plan(Variant::kNone, 2, 3, true)), (std::vector<K>{K::kConv, K::kActivation}));
  EXPECT_EQ(stage_plan(Variant::kNone, 2, 3, true)[0].stride, 2);
  EXPECT_EQ(kinds(stage_plan(Variant::kBlurBefore, 2, 3, true)),
            (std::vector<K>{K::kBlur, K::kConv, K::kActivation}));
  EXPECT_EQ(kinds(stage_plan(Variant::kBlurAfter, 2, 3, true)),
            (std::vector<K>{K::kConv, K::kBlur, K::kSubsample, K::kActivation}));
  EXPECT_EQ(kinds(stage_plan(Variant::kBlurBoth, 2, 3, true)),
            (std::vector<K>{K::kBlur, K::kConv, K::kBlur, K::kSubsample, K::kActivation}));
  EXPECT_EQ(kinds(stage_plan(Variant::kErf, 2, 3, true)),
            (std::vector<K>{K::kBlur, K::kSubsample, K::kConv, K::kActivation}));
  EXPECT_EQ(kinds(stage_plan(Variant::kBlurPoolPostActivation, 2, 3, true)),
            (std::vector<K>{K::kConv, K::kActivation, K::kBlur, K::kSubsample}));
  // Stride 1: no subsampling step.
  EXPECT_EQ(kinds(stage_plan(Variant::kBlurAfter, 1, 3, true)),
            (std::vector<K>{K::kConv, K::kBlur, K::kActivation}));
  EXPECT_EQ(kinds(stage_plan(Variant::kBlurAfter, 2, 1, false)),
            (std::vector<K>{K::kConv, K::kBlur, K::kSubsample}));
  EXPECT_THROW(stage_plan(Variant::kErf, 2, 1, true), ArgumentError);
  EXPECT_THROW(stage_plan(Variant::kErf, 1, 3, true), ArgumentError);
  EXPECT_THROW(stage_plan(Variant::kBlurPoolPostActivation, 2, 3, false), ArgumentError);
}

TEST(AntialiasTest, ActivationIsLastAndBlurPrecedesSubsampling) {
  for (Variant v : {Variant::kNone, Variant::kBlurBefore, Variant::kBlurAfter,
                    Variant::kBlurBoth, Variant::kErf, Variant::kBlurPoolPostActivation}) {
    for (int stride : {1, 2}) {
      if (v == Variant::kErf && stride == 1) continue;
      const auto plan = stage_plan(v, stride, 3, true);
      if (v != Variant::kBlurPoolPostActivation) {
        EXPECT_EQ(plan.back().kind, StageKind::kActivation) << to_string(v);
      }
      if (v == Variant::kBlurAfter || v == Variant::kBlurBoth) {
        bool blurred = false;
        for (const Stage& s : plan) {
          if (s.kind == StageKind::kBlur) blurred = true;
          if (s.kind == StageKind::kSubsample) EXPECT_TRUE(blurred) << to_string(v);
        }
      }
    }
  }
}

class VariantTest : public ::testing::Test {
 protected:
  Tensor x_ = random_tensor({2, 2, 8, 8}, 11);
  Tensor k3_ = random_tensor({3, 2, 3, 3}, 12);
  Tensor k1_ = random_tensor({3, 2, 1, 1}, 13);
};

TEST_F(VariantTest, IdentityBlurReducesToPlainConv) {
  const BlurSpec id{1, PaddingMode::kReflect};
  const Tensor none = apply_variant(Variant::kNone, k3_, 2, id, Activation::kSwish, x_);
  EXPECT_EQ(apply_variant(Variant::kBlurBefore, k3_, 2, id, Activation::kSwish, x_), none);
  EXPECT_LT(max_abs_diff(apply_variant(Variant::kBlurAfter, k3_, 2, id, Activation::kSwish, x_), none),
            1e-12);
  EXPECT_LT(max_abs_diff(apply_variant(Variant::kBlurBoth, k3_, 2, id, Activation::kSwish, x_), none),
            1e-12);
}

TEST_F(VariantTest, PointwiseConvCommutesWithSubsampling) {
  const BlurSpec spec{3, PaddingMode::kReflect};
  const Tensor got = apply_variant(Variant::kBlurBefore, k1_, 2, spec, Activation::kRelu, x_);
  Tensor expected = conv2d(subsample(blur(x_, spec), 2), k1_, 1, PaddingMode::kZero, 0);
  for (double& v : expected.data()) v = activate(Activation::kRelu, v);
  EXPECT_LT(max_abs_diff(got, expected), 1e-12);
}

TEST_F(VariantTest, CompositionsMatchHandBuiltOrder) {
  const BlurSpec spec{3, PaddingMode::kReflect};
  auto act = [](Tensor t, Activation a) {
    for (double& v : t.data()) v = activate(a, v);
    return t;
  };
  auto conv = [&](const Tensor& in, int s) { return conv2d(in, k3_, s, PaddingMode::kZero, 1); };
  const Activation a = Activation::kGelu;
  EXPECT_EQ(apply_variant(Variant::kBlurAfter, k3_, 2, spec, a, x_),
            act(subsample(blur(conv(x_, 1), spec), 2), a));
  EXPECT_EQ(apply_variant(Variant::kBlurBoth, k3_, 2, spec, a, x_),
            act(subsample(blur(conv(blur(x_, spec), 1), spec), 2), a));
  EXPECT_EQ(apply_variant(Variant::kErf, k3_, 2, spec, a, x_),
            act(conv(subsample(blur(x_, spec), 2), 1), a));
  EXPECT_EQ(apply_variant(Variant::kBlurPoolPostActivation, k3_, 2, spec, a, x_),
            subsample(blur(act(conv(x_, 1), a), spec), 2));
  EXPECT_THROW(apply_variant(Variant::kErf, k1_, 2, spec, a, x_), ArgumentError);
}

TEST(AntialiasTest, VariantNamesRoundTrip) {
  for (Variant v : {Variant::kNone, Variant::kBlurBefore, Variant::kBlurAfter,
                    Variant::kBlurBoth, Variant::kErf, Variant::kBlurPoolPostActivation}) {
    EXPECT_EQ(parse_variant(to_string(v)), v);
  }
  EXPECT_THROW(parse_variant("blur_sideways"), ArgumentError);
}

}  // namespace
}  // namespace aanet
