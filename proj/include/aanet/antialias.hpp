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

#ifndef AANET_ANTIALIAS_HPP_
#define AANET_ANTIALIAS_HPP_

#include <string_view>
#include <vector>

#include "aanet/activation.hpp"
#include "aanet/tensor.hpp"

namespace aanet {

// Non-trainable binomial low-pass filter. The 2-D kernel is the outer product
// of the normalized Pascal row of length k; padding amount is (k - 1) / 2.
struct BlurSpec {
  int k = 3;
  PaddingMode padding = PaddingMode::kReflect;

  bool operator==(const BlurSpec&) const = default;
};

// Throws ArgumentError unless k is one of 1, 3, 5, 7.
void validate(const BlurSpec& spec);

// Row k-1 of Pascal's triangle divided by 2^(k-1).
std::vector<double> binomial_kernel(int k);
// [1, 1, k, k] outer product of binomial_kernel(k) with itself.
Tensor blur_kernel_2d(int k);

// Depthwise blur; preserves spatial size and DC.
Tensor blur(const Tensor& input, const BlurSpec& spec);
Tensor blur_backward(const Tensor& grad_output, const Shape& input_shape,
                     const BlurSpec& spec);

// Where the low-pass filter sits relative to one trainable convolution.
enum class Variant {
  kNone,
  kBlurBefore,
  kBlurAfter,
  kBlurBoth,
  kErf,
  kBlurPoolPostActivation,
};

std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view name);

enum class StageKind { kBlur, kConv, kSubsample, kActivation };

struct Stage {
  StageKind kind;
  // Convolution or subsampling stride; 1 for the other kinds.
  int stride = 1;

  bool operator==(const Stage&) const = default;
};

// Ordered stages of one downsampling unit. Subsample stages are omitted when
// stride == 1; the activation stage is omitted when has_activation is false.
// Throws ArgumentError for erf with a 1x1 kernel or stride 1, and for
// blurpool_post_activation without an activation to follow.
std::vector<Stage> stage_plan(Variant variant, int stride,
                              std::size_t kernel_extent, bool has_activation);

// Runs one trainable convolution wrapped by the given variant. The trainable
// convolution pads (kH - 1) / 2 on each side with conv_padding.
Tensor apply_variant(Variant variant, const Tensor& trainable_kernel,
                     int stride, const BlurSpec& spec, Activation activation,
                     const Tensor& input,
                     PaddingMode conv_padding = PaddingMode::kZero);

}  // namespace aanet

#endif  // AANET_ANTIALIAS_HPP_
