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

#include <algorithm>
#include <string>

#include "aanet/error.hpp"

namespace aanet {

void validate(const BlurSpec& spec) {
  if (spec.k != 1 && spec.k != 3 && spec.k != 5 && spec.k != 7) {
    throw ArgumentError("blur size must be one of 1, 3, 5, 7; got " +
                        std::to_string(spec.k));
  }
}

std::vector<double> binomial_kernel(int k) {
  if (k < 1 || k % 2 == 0 || k > 7) {
    throw ArgumentError("binomial kernel size must be odd and in [1, 7], got " +
                        std::to_string(k));
  }
  std::vector<double> row{1.0};
  for (int i = 1; i < k; ++i) {
    std::vector<double> next(row.size() + 1, 0.0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  const double scale = 1.0 / static_cast<double>(1u << (k - 1));
  for (double& v : row) v *= scale;
  return row;
}

Tensor blur_kernel_2d(int k) {
  const std::vector<double> taps = binomial_kernel(k);
  const auto n = static_cast<std::size_t>(k);
  Tensor kernel({1, 1, n, n});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) kernel.at(0, 0, i, j) = taps[i] * taps[j];
  }
  return kernel;
}

Tensor blur(const Tensor& input, const BlurSpec& spec) {
  validate(spec);
  if (spec.k == 1) return input;
  return depthwise_conv2d(input, blur_kernel_2d(spec.k), spec.padding,
                          static_cast<std::size_t>(spec.k - 1) / 2);
}

Tensor blur_backward(const Tensor& grad_output, const Shape& input_shape,
                     const BlurSpec& spec) {
  validate(spec);
  if (spec.k == 1) return grad_output;
  return depthwise_conv2d_backward_input(
      grad_output, blur_kernel_2d(spec.k), input_shape, spec.padding,
      static_cast<std::size_t>(spec.k - 1) / 2);
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::kNone:
      return "none";
    case Variant::kBlurBefore:
      return "blur_before";
    case Variant::kBlurAfter:
      return "blur_after";
    case Variant::kBlurBoth:
      return "blur_both";
    case Variant::kErf:
      return "erf";
    case Variant::kBlurPoolPostActivation:
      return "blurpool_post_activation";
  }
  return "none";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::kNone, Variant::kBlurBefore, Variant::kBlurAfter,
                    Variant::kBlurBoth, Variant::kErf,
                    Variant::kBlurPoolPostActivation}) {
    if (to_string(v) == name) return v;
  }
  throw ArgumentError("unknown anti-aliasing variant '" + std::string(name) +
                      "'");
}

std::vector<Stage> stage_plan(Variant variant, int stride,
                              std::size_t kernel_extent, bool has_activation) {
  if (stride < 1) {
    throw ArgumentError("stride must be >= 1, got " + std::to_string(stride));
  }
  std::vector<Stage> plan;
  auto add = [&plan](StageKind kind, int s = 1) { plan.push_back({kind, s}); };
  auto add_subsample = [&] {
    if (stride > 1) add(StageKind::kSubsample, stride);
  };
  switch (variant) {
    case Variant::kNone:
      add(StageKind::kConv, stride);
      break;
    case Variant::kBlurBefore:
      add(StageKind::kBlur);
      add(StageKind::kConv, stride);
      break;
    case Variant::kBlurAfter:
      add(StageKind::kConv);
      add(StageKind::kBlur);
      add_subsample();
      break;
    case Variant::kBlurBoth:
      add(StageKind::kBlur);
      add(StageKind::kConv);
      add(StageKind::kBlur);
      add_subsample();
      break;
    case Variant::kErf:
      if (kernel_extent <= 1) {
        throw ArgumentError(
            "erf variant needs a trainable kernel with spatial support > 1");
      }
      if (stride <= 1) {
        throw ArgumentError("erf variant needs a stride > 1");
      }
      add(StageKind::kBlur);
      add_subsample();
      add(StageKind::kConv);
      break;
    case Variant::kBlurPoolPostActivation:
      if (!has_activation) {
        throw ArgumentError(
            "blurpool_post_activation needs an activation to follow");
      }
      add(StageKind::kConv);
      add(StageKind::kActivation);
      add(StageKind::kBlur);
      add_subsample();
      return plan;
  }
  if (has_activation) add(StageKind::kActivation);
  return plan;
}

Tensor apply_variant(Variant variant, const Tensor& trainable_kernel,
                     int stride, const BlurSpec& spec, Activation activation,
                     const Tensor& input, PaddingMode conv_padding) {
  validate(spec);
  const Shape& ks = trainable_kernel.shape();
  const std::size_t conv_pad = (ks.h - 1) / 2;
  Tensor x = input;
  for (const Stage& stage :
       stage_plan(variant, stride, std::max(ks.h, ks.w), true)) {
    switch (stage.kind) {
      case StageKind::kBlur:
        x = blur(x, spec);
        break;
      case StageKind::kConv:
        x = conv2d(x, trainable_kernel, stage.stride, conv_padding, conv_pad);
        break;
      case StageKind::kSubsample:
        x = subsample(x, stage.stride);
        break;
      case StageKind::kActivation:
        for (double& v : x.data()) v = activate(activation, v);
        break;
    }
  }
  return x;
}

}  // namespace aanet
