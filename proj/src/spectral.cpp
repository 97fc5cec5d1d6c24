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

#include "aanet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "aanet/error.hpp"

namespace aanet {

namespace {

void check_axis(std::size_t length, int stride, const char* axis) {
  if (length > 1 && length % static_cast<std::size_t>(stride) != 0) {
    throw ArgumentError(std::string("stride ") + std::to_string(stride) +
                        " does not divide " + axis + " length " +
                        std::to_string(length));
  }
}

bool above_limit(std::size_t k, std::size_t length, int stride) {
  const std::size_t wrapped = std::min(k, length - k);
  const double limit =
      static_cast<double>(length) / (2.0 * static_cast<double>(stride));
  return length > 1 && static_cast<double>(wrapped) > limit;
}

void accumulate(std::span<const double> plane, std::size_t height,
                std::size_t width, int stride, AliasReport& report) {
  const Spectrum spec = dft2(plane, height, width);
  for (std::size_t k = 0; k < height; ++k) {
    const bool row_above = above_limit(k, height, stride);
    for (std::size_t l = 0; l < width; ++l) {
      const double e = std::norm(spec.at(k, l));
      report.total_energy += e;
      if (row_above || above_limit(l, width, stride)) {
        report.above_nyquist_energy += e;
      }
    }
  }
}

void finish(AliasReport& report) {
  report.fraction = report.total_energy > 0.0
                        ? report.above_nyquist_energy / report.total_energy
                        : 0.0;
}

void check_stride(std::size_t height, std::size_t width, int stride) {
  if (stride < 2) {
    throw ArgumentError("aliasing analysis needs stride >= 2, got " +
                        std::to_string(stride));
  }
  check_axis(height, stride, "height");
  check_axis(width, stride, "width");
}

}  // namespace

AliasReport aliased_energy(std::span<const double> plane, std::size_t height,
                           std::size_t width, int stride) {
  check_stride(height, width, stride);
  AliasReport report;
  report.stride = stride;
  accumulate(plane, height, width, stride, report);
  finish(report);
  return report;
}

AliasReport aliased_energy(const Tensor& tensor, int stride) {
  const Shape& s = tensor.shape();
  check_stride(s.h, s.w, stride);
  AliasReport report;
  report.stride = stride;
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t c = 0; c < s.c; ++c) {
      accumulate(tensor.plane(n, c), s.h, s.w, stride, report);
    }
  }
  finish(report);
  return report;
}

std::vector<Complex> folding_spectrum(std::span<const double> signal,
                                      int stride) {
  if (stride < 1) throw ArgumentError("stride must be >= 1");
  const std::size_t n = signal.size();
  const auto s = static_cast<std::size_t>(stride);
  if (n == 0 || n % s != 0) {
    throw ArgumentError("stride " + std::to_string(stride) +
                        " does not divide signal length " + std::to_string(n));
  }
  const std::vector<Complex> full = dft(signal);
  const std::size_t m = n / s;
  std::vector<Complex> folded(m);
  const double scale = 1.0 / static_cast<double>(s);
  for (std::size_t k = 0; k < m; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t r = 0; r < s; ++r) acc += full[k + r * m];
    folded[k] = acc * scale;
  }
  return folded;
}

std::vector<LayerAliasReport> subsampling_alias_reports(const LayerGraph& net,
                                                        const Tensor& batch) {
  std::vector<LayerAliasReport> out;
  for (const SubsampleProbe& probe : net.subsampling_probes(batch)) {
    out.push_back({probe.layer, aliased_energy(probe.signal, probe.stride)});
  }
  return out;
}

Tensor shift_image(const Tensor& input, long dy, long dx, PaddingMode padding) {
  if (padding == PaddingMode::kCircular) return roll(input, dy, dx);
  const Shape& s = input.shape();
  Tensor out(s);
  const long h = static_cast<long>(s.h);
  const long w = static_cast<long>(s.w);
  auto source = [padding](long p, long len) -> std::optional<std::size_t> {
    if (p >= 0 && p < len) return static_cast<std::size_t>(p);
    if (padding == PaddingMode::kZero || len == 1) return std::nullopt;
    // Mirror without repeating the border sample, folding as often as needed.
    const long period = 2 * (len - 1);
    long q = ((p % period) + period) % period;
    if (q >= len) q = period - q;
    return static_cast<std::size_t>(q);
  };
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t c = 0; c < s.c; ++c) {
      auto src = input.plane(n, c);
      auto dst = out.plane(n, c);
      for (long i = 0; i < h; ++i) {
        const auto si = source(i - dy, h);
        if (!si) continue;
        for (long j = 0; j < w; ++j) {
          const auto sj = source(j - dx, w);
          if (!sj) continue;
          dst[static_cast<std::size_t>(i * w + j)] = src[*si * s.w + *sj];
        }
      }
    }
  }
  return out;
}

namespace {

double cosine(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 && nb == 0.0) return 1.0;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

}  // namespace

ConsistencyReport shift_consistency(const LayerGraph& net, const Tensor& inputs,
                                    int max_shift, PaddingMode padding) {
  if (max_shift < 1) throw ArgumentError("max_shift must be >= 1");
  std::vector<Shift> shifts;
  for (long dy = 1; dy <= max_shift; ++dy) {
    for (long dx = 1; dx <= max_shift; ++dx) shifts.push_back({dy, dx});
  }
  return shift_consistency(net, inputs, shifts, padding);
}

ConsistencyReport shift_consistency(const LayerGraph& net, const Tensor& inputs,
                                    std::span<const Shift> shifts,
                                    PaddingMode padding) {
  const std::size_t n = inputs.shape().n;
  if (n == 0 || shifts.empty()) {
    throw ArgumentError("shift consistency needs inputs and shifts");
  }
  const Tensor base_features = net.features(inputs);
  const std::vector<int> base_pred = argmax_rows(net.classify(base_features));
  const std::size_t dim = base_features.size() / n;

  std::size_t agree = 0;
  double cos_sum = 0.0;
  for (const Shift& s : shifts) {
    const Tensor feats = net.features(shift_image(inputs, s.dy, s.dx, padding));
    const std::vector<int> pred = argmax_rows(net.classify(feats));
    for (std::size_t i = 0; i < n; ++i) {
      if (pred[i] == base_pred[i]) ++agree;
      cos_sum += cosine(base_features.data().subspan(i * dim, dim),
                        feats.data().subspan(i * dim, dim));
    }
  }
  ConsistencyReport report;
  report.pairs_evaluated = n * shifts.size();
  const double pairs = static_cast<double>(report.pairs_evaluated);
  report.agreement_rate = static_cast<double>(agree) / pairs;
  report.mean_feature_cosine = cos_sum / pairs;
  return report;
}

void to_json(nlohmann::json& j, const AliasReport& r) {
  j = {{"total_energy", r.total_energy},
       {"above_nyquist_energy", r.above_nyquist_energy},
       {"fraction", r.fraction},
       {"stride", r.stride}};
}

void from_json(const nlohmann::json& j, AliasReport& r) {
  j.at("total_energy").get_to(r.total_energy);
  j.at("above_nyquist_energy").get_to(r.above_nyquist_energy);
  j.at("fraction").get_to(r.fraction);
  j.at("stride").get_to(r.stride);
}

void to_json(nlohmann::json& j, const ConsistencyReport& r) {
  j = {{"pairs_evaluated", r.pairs_evaluated},
       {"agreement_rate", r.agreement_rate},
       {"mean_feature_cosine", r.mean_feature_cosine}};
}

void from_json(const nlohmann::json& j, ConsistencyReport& r) {
  j.at("pairs_evaluated").get_to(r.pairs_evaluated);
  j.at("agreement_rate").get_to(r.agreement_rate);
  j.at("mean_feature_cosine").get_to(r.mean_feature_cosine);
}

}  // namespace aanet
