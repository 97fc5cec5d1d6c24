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

#ifndef AANET_SPECTRAL_HPP_
#define AANET_SPECTRAL_HPP_

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "aanet/fourier.hpp"
#include "aanet/network.hpp"
#include "aanet/tensor.hpp"

namespace aanet {

// Energy split of a signal about to be subsampled by `stride`.
struct AliasReport {
  double total_energy = 0.0;
  double above_nyquist_energy = 0.0;
  // above / total, or 0 for a zero signal.
  double fraction = 0.0;
  int stride = 2;

  bool operator==(const AliasReport&) const = default;
};

// Sums |X[k, l]|^2 over the bins whose wrapped frequency min(k, H - k) or
// min(l, W - l) strictly exceeds the post-subsampling limit H / (2 stride)
// (resp. W / (2 stride)). DC is never above the limit. Axes of length 1 are
// not subsampled and need not be divisible by the stride.
AliasReport aliased_energy(std::span<const double> plane, std::size_t height,
                           std::size_t width, int stride);
// Accumulates over every plane of the tensor.
AliasReport aliased_energy(const Tensor& tensor, int stride);

// Predicted spectrum of subsample(signal, stride):
// X_sub[k] = (1 / s) * sum_m X[k + m N / s].
std::vector<Complex> folding_spectrum(std::span<const double> signal,
                                      int stride);

struct LayerAliasReport {
  std::string layer;
  AliasReport report;
};

// One report per signal entering a subsampling step of the network.
std::vector<LayerAliasReport> subsampling_alias_reports(const LayerGraph& net,
                                                        const Tensor& batch);

struct ConsistencyReport {
  std::size_t pairs_evaluated = 0;
  // Fraction of (input, shifted input) pairs with the same predicted class.
  double agreement_rate = 0.0;
  // Mean cosine similarity of the pre-classifier features of each pair.
  double mean_feature_cosine = 0.0;

  bool operator==(const ConsistencyReport&) const = default;
};

struct Shift {
  long dy = 0;
  long dx = 0;
};

// Shifts every plane by (dy, dx). Circular wraps; zero fills with zeros;
// reflect fills with the mirrored image.
Tensor shift_image(const Tensor& input, long dy, long dx, PaddingMode padding);

// Compares the network on each input and on every shift (dy, dx) with
// 1 <= dy, dx <= max_shift. Uses eval-mode inference only.
ConsistencyReport shift_consistency(const LayerGraph& net, const Tensor& inputs,
                                    int max_shift, PaddingMode padding);
ConsistencyReport shift_consistency(const LayerGraph& net, const Tensor& inputs,
                                    std::span<const Shift> shifts,
                                    PaddingMode padding);

void to_json(nlohmann::json& j, const AliasReport& r);
void from_json(const nlohmann::json& j, AliasReport& r);
void to_json(nlohmann::json& j, const ConsistencyReport& r);
void from_json(const nlohmann::json& j, ConsistencyReport& r);

}  // namespace aanet

#endif  // AANET_SPECTRAL_HPP_
