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

#include "aanet/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "aanet/error.hpp"

namespace aanet {

std::string to_string(const Shape& shape) {
  std::ostringstream os;
  os << "[" << shape.n << ", " << shape.c << ", " << shape.h << ", "
     << shape.w << "]";
  return os.str();
}

Tensor::Tensor(Shape shape, double fill)
    : shape_(shape), data_(shape.size(), fill) {}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(shape), data_(std::move(data)) {
  if (data_.size() != shape_.size()) {
    throw DimensionError("tensor data length " + std::to_string(data_.size()) +
                         " does not match shape " + to_string(shape_));
  }
}

std::span<double> Tensor::plane(std::size_t n, std::size_t c) {
  return std::span<double>(data_).subspan(index(n, c, 0, 0),
                                          shape_.plane_size());
}

std::span<const double> Tensor::plane(std::size_t n, std::size_t c) const {
  return std::span<const double>(data_).subspan(index(n, c, 0, 0),
                                                shape_.plane_size());
}

Tensor Tensor::sample(std::size_t n) const {
  const std::size_t stride = shape_.c * shape_.plane_size();
  auto first = data_.begin() + static_cast<std::ptrdiff_t>(n * stride);
  return Tensor({1, shape_.c, shape_.h, shape_.w},
                std::vector<double>(first, first + static_cast<std::ptrdiff_t>(stride)));
}

void Tensor::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

std::string_view to_string(PaddingMode mode) {
  switch (mode) {
    case PaddingMode::kZero:
      return "zero";
    case PaddingMode::kCircular:
      return "circular";
    case PaddingMode::kReflect:
      return "reflect";
  }
  return "zero";
}

PaddingMode parse_padding(std::string_view name) {
  if (name == "zero") return PaddingMode::kZero;
  if (name == "circular") return PaddingMode::kCircular;
  if (name == "reflect") return PaddingMode::kReflect;
  throw ArgumentError("unknown padding mode '" + std::string(name) + "'");
}

std::size_t windowed_output_size(std::size_t length, std::size_t window,
                                 std::size_t stride, std::size_t pad) {
  const std::size_t padded = length + 2 * pad;
  if (window > padded) {
    throw DimensionError("window " + std::to_string(window) +
                         " exceeds padded extent " + std::to_string(padded));
  }
  return (padded - window) / stride + 1;
}

namespace {

void check_stride(int stride) {
  if (stride < 1) {
    throw ArgumentError("stride must be >= 1, got " + std::to_string(stride));
  }
}

// Index into the unpadded axis that feeds padded position i, or nullopt for
// a zero-filled position.
std::optional<std::size_t> source_index(std::size_t i, std::size_t length,
                                        std::size_t amount, PaddingMode mode) {
  const long p = static_cast<long>(i) - static_cast<long>(amount);
  const long len = static_cast<long>(length);
  if (p >= 0 && p < len) return static_cast<std::size_t>(p);
  switch (mode) {
    case PaddingMode::kZero:
      return std::nullopt;
    case PaddingMode::kCircular:
      return static_cast<std::size_t>(((p % len) + len) % len);
    case PaddingMode::kReflect:
      return static_cast<std::size_t>(p < 0 ? -p : 2 * (len - 1) - p);
  }
  return std::nullopt;
}

void check_pad(const Shape& shape, PaddingMode mode, std::size_t amount) {
  if (amount == 0) return;
  if (shape.h == 0 || shape.w == 0) {
    throw DimensionError("cannot pad an empty plane");
  }
  if (mode == PaddingMode::kReflect &&
      (amount >= shape.h || amount >= shape.w)) {
    throw ArgumentError("reflect padding of " + std::to_string(amount) +
                        " requires axis lengths > amount, got " +
                        to_string(shape));
  }
}

}  // namespace

Tensor pad(const Tensor& input, PaddingMode mode, std::size_t amount) {
  const Shape& s = input.shape();
  check_pad(s, mode, amount);
  if (amount == 0) return input;
  Tensor out({s.n, s.c, s.h + 2 * amount, s.w + 2 * amount});
  const Shape& o = out.shape();
  std::vector<std::optional<std::size_t>> rows(o.h), cols(o.w);
  for (std::size_t i = 0; i < o.h; ++i) rows[i] = source_index(i, s.h, amount, mode);
  for (std::size_t j = 0; j < o.w; ++j) cols[j] = source_index(j, s.w, amount, mode);
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t c = 0; c < s.c; ++c) {
      auto src = input.plane(n, c);
      auto dst = out.plane(n, c);
      for (std::size_t i = 0; i < o.h; ++i) {
        if (!rows[i]) continue;
        for (std::size_t j = 0; j < o.w; ++j) {
          if (!cols[j]) continue;
          dst[i * o.w + j] = src[*rows[i] * s.w + *cols[j]];
        }
      }
    }
  }
  return out;
}

Tensor pad_backward(const Tensor& grad_padded, const Shape& input_shape,
                    PaddingMode mode, std::size_t amount) {
  if (amount == 0) return grad_padded;
  const Shape& o = grad_padded.shape();
  if (o.n != input_shape.n || o.c != input_shape.c ||
      o.h != input_shape.h + 2 * amount || o.w != input_shape.w + 2 * amount) {
    throw DimensionError("padded gradient " + to_string(o) +
                         " does not match input " + to_string(input_shape));
  }
  Tensor grad(input_shape);
  std::vector<std::optional<std::size_t>> rows(o.h), cols(o.w);
  for (std::size_t i = 0; i < o.h; ++i) rows[i] = source_index(i, input_shape.h, amount, mode);
  for (std::size_t j = 0; j < o.w; ++j) cols[j] = source_index(j, input_shape.w, amount, mode);
  for (std::size_t n = 0; n < o.n; ++n) {
    for (std::size_t c = 0; c < o.c; ++c) {
      auto src = grad_padded.plane(n, c);
      auto dst = grad.plane(n, c);
      for (std::size_t i = 0; i < o.h; ++i) {
        if (!rows[i]) continue;
        for (std::size_t j = 0; j < o.w; ++j) {
          if (!cols[j]) continue;
          dst[*rows[i] * input_shape.w + *cols[j]] += src[i * o.w + j];
        }
      }
    }
  }
  return grad;
}

namespace {

struct ConvGeometry {
  Shape padded;
  Shape output;
};

ConvGeometry conv_geometry(const Shape& input, const Shape& kernel, int stride,
                           std::size_t pad_amount) {
  check_stride(stride);
  if (input.c != kernel.c) {
    throw DimensionError("input channels " + std::to_string(input.c) +
                         " != kernel input channels " +
                         std::to_string(kernel.c));
  }
  const auto s = static_cast<std::size_t>(stride);
  ConvGeometry g;
  g.padded = {input.n, input.c, input.h + 2 * pad_amount,
              input.w + 2 * pad_amount};
  g.output = {input.n, kernel.n,
              windowed_output_size(input.h, kernel.h, s, pad_amount),
              windowed_output_size(input.w, kernel.w, s, pad_amount)};
  return g;
}

}  // namespace

Tensor conv2d(const Tensor& input, const Tensor& kernel, int stride,
              PaddingMode padding, std::size_t pad_amount) {
  const Shape& ks = kernel.shape();
  const ConvGeometry g = conv_geometry(input.shape(), ks, stride, pad_amount);
  const Tensor padded = pad(input, padding, pad_amount);
  const auto s = static_cast<std::size_t>(stride);
  const Shape& o = g.output;
  const std::size_t pw = g.padded.w;
  Tensor out(o);
  for (std::size_t n = 0; n < o.n; ++n) {
    for (std::size_t oc = 0; oc < o.c; ++oc) {
      auto dst = out.plane(n, oc);
      for (std::size_t ic = 0; ic < ks.c; ++ic) {
        auto src = padded.plane(n, ic);
        for (std::size_t kh = 0; kh < ks.h; ++kh) {
          for (std::size_t kw = 0; kw < ks.w; ++kw) {
            const double wv = kernel.at(oc, ic, kh, kw);
            for (std::size_t oh = 0; oh < o.h; ++oh) {
              const double* row = &src[(oh * s + kh) * pw + kw];
              double* out_row = &dst[oh * o.w];
              for (std::size_t ow = 0; ow < o.w; ++ow) {
                out_row[ow] += wv * row[ow * s];
              }
            }
          }
        }
      }
    }
  }
  return out;
}

Tensor conv2d_backward_input(const Tensor& grad_output, const Tensor& kernel,
                             const Shape& input_shape, int stride,
                             PaddingMode padding, std::size_t pad_amount) {
  const Shape& ks = kernel.shape();
  const ConvGeometry g = conv_geometry(input_shape, ks, stride, pad_amount);
  if (grad_output.shape() != g.output) {
    throw DimensionError("gradient shape " + to_string(grad_output.shape()) +
                         " != conv output " + to_string(g.output));
  }
  const auto s = static_cast<std::size_t>(stride);
  const Shape& o = g.output;
  const std::size_t pw = g.padded.w;
  Tensor grad_padded(g.padded);
  for (std::size_t n = 0; n < o.n; ++n) {
    for (std::size_t oc = 0; oc < o.c; ++oc) {
      auto go = grad_output.plane(n, oc);
      for (std::size_t ic = 0; ic < ks.c; ++ic) {
        auto dst = grad_padded.plane(n, ic);
        for (std::size_t kh = 0; kh < ks.h; ++kh) {
          for (std::size_t kw = 0; kw < ks.w; ++kw) {
            const double wv = kernel.at(oc, ic, kh, kw);
            for (std::size_t oh = 0; oh < o.h; ++oh) {
              double* row = &dst[(oh * s + kh) * pw + kw];
              const double* g_row = &go[oh * o.w];
              for (std::size_t ow = 0; ow < o.w; ++ow) {
                row[ow * s] += wv * g_row[ow];
              }
            }
          }
        }
      }
    }
  }
  return pad_backward(grad_padded, input_shape, padding, pad_amount);
}

Tensor conv2d_backward_kernel(const Tensor& input, const Tensor& grad_output,
                              const Shape& kernel_shape, int stride,
                              PaddingMode padding, std::size_t pad_amount) {
  const ConvGeometry g =
      conv_geometry(input.shape(), kernel_shape, stride, pad_amount);
  if (grad_output.shape() != g.output) {
    throw DimensionError("gradient shape " + to_string(grad_output.shape()) +
                         " != conv output " + to_string(g.output));
  }
  const Tensor padded = pad(input, padding, pad_amount);
  const auto s = static_cast<std::size_t>(stride);
  const Shape& o = g.output;
  const std::size_t pw = g.padded.w;
  Tensor grad(kernel_shape);
  for (std::size_t n = 0; n < o.n; ++n) {
    for (std::size_t oc = 0; oc < o.c; ++oc) {
      auto go = grad_output.plane(n, oc);
      for (std::size_t ic = 0; ic < kernel_shape.c; ++ic) {
        auto src = padded.plane(n, ic);
        for (std::size_t kh = 0; kh < kernel_shape.h; ++kh) {
          for (std::size_t kw = 0; kw < kernel_shape.w; ++kw) {
            double acc = 0.0;
            for (std::size_t oh = 0; oh < o.h; ++oh) {
              const double* row = &src[(oh * s + kh) * pw + kw];
              const double* g_row = &go[oh * o.w];
              for (std::size_t ow = 0; ow < o.w; ++ow) {
                acc += g_row[ow] * row[ow * s];
              }
            }
            grad.at(oc, ic, kh, kw) += acc;
          }
        }
      }
    }
  }
  return grad;
}

namespace {

void check_depthwise_kernel(const Tensor& kernel) {
  const Shape& ks = kernel.shape();
  if (ks.n != 1 || ks.c != 1) {
    throw DimensionError("depthwise kernel must be [1, 1, kH, kW], got " +
                         to_string(ks));
  }
}

}  // namespace

Tensor depthwise_conv2d(const Tensor& input, const Tensor& kernel,
                        PaddingMode padding, std::size_t pad_amount) {
  check_depthwise_kernel(kernel);
  const Shape& ks = kernel.shape();
  const Shape& s = input.shape();
  const Tensor padded = pad(input, padding, pad_amount);
  const std::size_t pw = padded.shape().w;
  Tensor out({s.n, s.c, windowed_output_size(s.h, ks.h, 1, pad_amount),
              windowed_output_size(s.w, ks.w, 1, pad_amount)});
  const Shape& o = out.shape();
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t c = 0; c < s.c; ++c) {
      auto src = padded.plane(n, c);
      auto dst = out.plane(n, c);
      for (std::size_t kh = 0; kh < ks.h; ++kh) {
        for (std::size_t kw = 0; kw < ks.w; ++kw) {
          const double wv = kernel.at(0, 0, kh, kw);
          for (std::size_t oh = 0; oh < o.h; ++oh) {
            const double* row = &src[(oh + kh) * pw + kw];
            double* out_row = &dst[oh * o.w];
            for (std::size_t ow = 0; ow < o.w; ++ow) out_row[ow] += wv * row[ow];
          }
        }
      }
    }
  }
  return out;
}

Tensor depthwise_conv2d_backward_input(const Tensor& grad_output,
                                       const Tensor& kernel,
                                       const Shape& input_shape,
                                       PaddingMode padding,
                                       std::size_t pad_amount) {
  check_depthwise_kernel(kernel);
  const Shape& ks = kernel.shape();
  const Shape padded_shape{input_shape.n, input_shape.c,
                           input_shape.h + 2 * pad_amount,
                           input_shape.w + 2 * pad_amount};
  const Shape& o = grad_output.shape();
  if (o.n != input_shape.n || o.c != input_shape.c ||
      o.h != windowed_output_size(input_shape.h, ks.h, 1, pad_amount) ||
      o.w != windowed_output_size(input_shape.w, ks.w, 1, pad_amount)) {
    throw DimensionError("gradient shape " + to_string(o) +
                         " does not match depthwise output");
  }
  const std::size_t pw = padded_shape.w;
  Tensor grad_padded(padded_shape);
  for (std::size_t n = 0; n < o.n; ++n) {
    for (std::size_t c = 0; c < o.c; ++c) {
      auto go = grad_output.plane(n, c);
      auto dst = grad_padded.plane(n, c);
      for (std::size_t kh = 0; kh < ks.h; ++kh) {
        for (std::size_t kw = 0; kw < ks.w; ++kw) {
          const double wv = kernel.at(0, 0, kh, kw);
          for (std::size_t oh = 0; oh < o.h; ++oh) {
            double* row = &dst[(oh + kh) * pw + kw];
            const double* g_row = &go[oh * o.w];
            for (std::size_t ow = 0; ow < o.w; ++ow) row[ow] += wv * g_row[ow];
          }
        }
      }
    }
  }
  return pad_backward(grad_padded, input_shape, padding, pad_amount);
}

namespace {

void check_window(int window) {
  if (window < 1) {
    throw ArgumentError("pooling window must be >= 1, got " +
                        std::to_string(window));
  }
}

// Window and stride along each axis. A length-1 axis without padding is a
// 1-D signal along the other axis and is left alone.
struct PoolGeometry {
  std::size_t win_h, win_w, stride_h, stride_w;
  Shape out;
};

PoolGeometry pool_geometry(const Shape& s, int window, int stride,
                           std::size_t pad_amount) {
  check_window(window);
  check_stride(stride);
  const auto win = static_cast<std::size_t>(window);
  const auto st = static_cast<std::size_t>(stride);
  const bool flat_h = s.h == 1 && pad_amount == 0;
  const bool flat_w = s.w == 1 && pad_amount == 0;
  PoolGeometry g{flat_h ? 1 : win, flat_w ? 1 : win, flat_h ? 1 : st,
                 flat_w ? 1 : st, {}};
  g.out = {s.n, s.c, windowed_output_size(s.h, g.win_h, g.stride_h, pad_amount),
           windowed_output_size(s.w, g.win_w, g.stride_w, pad_amount)};
  return g;
}

// Calls visit(n, c, oh, ow, flat index into the padded plane of the max).
template <typename Visit>
void scan_max_pool(const Tensor& padded, const PoolGeometry& g, Visit&& visit) {
  const Shape& out = g.out;
  const std::size_t pw = padded.shape().w;
  for (std::size_t n = 0; n < out.n; ++n) {
    for (std::size_t c = 0; c < out.c; ++c) {
      auto src = padded.plane(n, c);
      for (std::size_t oh = 0; oh < out.h; ++oh) {
        for (std::size_t ow = 0; ow < out.w; ++ow) {
          std::size_t best = (oh * g.stride_h) * pw + ow * g.stride_w;
          for (std::size_t i = 0; i < g.win_h; ++i) {
            for (std::size_t j = 0; j < g.win_w; ++j) {
              const std::size_t idx = (oh * g.stride_h + i) * pw + ow * g.stride_w + j;
              if (src[idx] > src[best]) best = idx;
            }
          }
          visit(n, c, oh, ow, best);
        }
      }
    }
  }
}

}  // namespace

Tensor max_pool(const Tensor& input, int window, int stride,
                PaddingMode padding, std::size_t pad_amount) {
  const PoolGeometry g = pool_geometry(input.shape(), window, stride, pad_amount);
  const Tensor padded = pad(input, padding, pad_amount);
  Tensor out(g.out);
  scan_max_pool(padded, g,
                [&](std::size_t n, std::size_t c, std::size_t oh,
                    std::size_t ow, std::size_t idx) {
                  out.at(n, c, oh, ow) = padded.plane(n, c)[idx];
                });
  return out;
}

Tensor max_pool_backward(const Tensor& input, const Tensor& grad_output,
                         int window, int stride, PaddingMode padding,
                         std::size_t pad_amount) {
  const PoolGeometry g = pool_geometry(input.shape(), window, stride, pad_amount);
  const Shape& o = g.out;
  if (grad_output.shape() != o) {
    throw DimensionError("gradient shape " + to_string(grad_output.shape()) +
                         " != pool output " + to_string(o));
  }
  const Tensor padded = pad(input, padding, pad_amount);
  Tensor grad_padded(padded.shape());
  scan_max_pool(padded, g,
                [&](std::size_t n, std::size_t c, std::size_t oh,
                    std::size_t ow, std::size_t idx) {
                  grad_padded.plane(n, c)[idx] += grad_output.at(n, c, oh, ow);
                });
  return pad_backward(grad_padded, input.shape(), padding, pad_amount);
}

Tensor subsample(const Tensor& input, int stride) {
  check_stride(stride);
  if (stride == 1) return input;
  const auto s = static_cast<std::size_t>(stride);
  const Shape& in = input.shape();
  const std::size_t oh = in.h == 0 ? 0 : (in.h - 1) / s + 1;
  const std::size_t ow = in.w == 0 ? 0 : (in.w - 1) / s + 1;
  Tensor out({in.n, in.c, oh, ow});
  for (std::size_t n = 0; n < in.n; ++n) {
    for (std::size_t c = 0; c < in.c; ++c) {
      for (std::size_t i = 0; i < oh; ++i) {
        for (std::size_t j = 0; j < ow; ++j) {
          out.at(n, c, i, j) =
              input.at(n, c, kSubsamplePhase + i * s, kSubsamplePhase + j * s);
        }
      }
    }
  }
  return out;
}

Tensor subsample_backward(const Tensor& grad_output, const Shape& input_shape,
                          int stride) {
  check_stride(stride);
  const auto s = static_cast<std::size_t>(stride);
  const Shape& o = grad_output.shape();
  if (o.n != input_shape.n || o.c != input_shape.c ||
      o.h != (input_shape.h + s - 1) / s ||
      o.w != (input_shape.w + s - 1) / s) {
    throw DimensionError("gradient shape " + to_string(o) +
                         " does not match subsampled " +
                         to_string(input_shape));
  }
  Tensor grad(input_shape);
  for (std::size_t n = 0; n < o.n; ++n) {
    for (std::size_t c = 0; c < o.c; ++c) {
      for (std::size_t i = 0; i < o.h; ++i) {
        for (std::size_t j = 0; j < o.w; ++j) {
          grad.at(n, c, kSubsamplePhase + i * s, kSubsamplePhase + j * s) =
              grad_output.at(n, c, i, j);
        }
      }
    }
  }
  return grad;
}

Tensor roll(const Tensor& input, long dy, long dx) {
  const Shape& s = input.shape();
  Tensor out(s);
  if (s.h == 0 || s.w == 0) return out;
  const long h = static_cast<long>(s.h);
  const long w = static_cast<long>(s.w);
  const long sy = ((dy % h) + h) % h;
  const long sx = ((dx % w) + w) % w;
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t c = 0; c < s.c; ++c) {
      auto src = input.plane(n, c);
      auto dst = out.plane(n, c);
      for (long i = 0; i < h; ++i) {
        const long ti = (i + sy) % h;
        for (long j = 0; j < w; ++j) {
          dst[static_cast<std::size_t>(ti * w + (j + sx) % w)] =
              src[static_cast<std::size_t>(i * w + j)];
        }
      }
    }
  }
  return out;
}

}  // namespace aanet
