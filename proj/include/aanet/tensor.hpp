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

#ifndef AANET_TENSOR_HPP_
#define AANET_TENSOR_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aanet {

// Batch, channel, height, width.
struct Shape {
  std::size_t n = 0;
  std::size_t c = 0;
  std::size_t h = 0;
  std::size_t w = 0;

  std::size_t size() const { return n * c * h * w; }
  std::size_t plane_size() const { return h * w; }
  bool operator==(const Shape&) const = default;
};

std::string to_string(const Shape& shape);

// Dense row-major NCHW array of doubles.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0);
  // Throws DimensionError when data.size() != shape.size().
  Tensor(Shape shape, std::vector<double> data);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  const std::vector<double>& values() const { return data_; }

  double& at(std::size_t n, std::size_t c, std::size_t h, std::size_t w) {
    return data_[index(n, c, h, w)];
  }
  double at(std::size_t n, std::size_t c, std::size_t h, std::size_t w) const {
    return data_[index(n, c, h, w)];
  }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  // One H×W plane of sample n, channel c.
  std::span<double> plane(std::size_t n, std::size_t c);
  std::span<const double> plane(std::size_t n, std::size_t c) const;

  // Copies sample n into a 1×C×H×W tensor.
  Tensor sample(std::size_t n) const;

  void fill(double value);
  bool all_finite() const;

  bool operator==(const Tensor&) const = default;

 private:
  std::size_t index(std::size_t n, std::size_t c, std::size_t h,
                    std::size_t w) const {
    return ((n * shape_.c + c) * shape_.h + h) * shape_.w + w;
  }

  Shape shape_;
  std::vector<double> data_;
};

enum class PaddingMode { kZero, kCircular, kReflect };

std::string_view to_string(PaddingMode mode);
// Throws ArgumentError for unknown names.
PaddingMode parse_padding(std::string_view name);

// Subsampling keeps indices 0, stride, 2*stride, ... on both axes.
inline constexpr std::size_t kSubsamplePhase = 0;

// Output length of a windowed op: floor((len + 2*pad - window)/stride) + 1.
std::size_t windowed_output_size(std::size_t length, std::size_t window,
                                 std::size_t stride, std::size_t pad);

Tensor pad(const Tensor& input, PaddingMode mode, std::size_t amount);
// Adjoint of pad: folds a gradient w.r.t. the padded tensor back onto the
// original spatial extent.
Tensor pad_backward(const Tensor& grad_padded, const Shape& input_shape,
                    PaddingMode mode, std::size_t amount);

// Cross-correlation (no kernel flip). kernel is [outC, inC, kH, kW].
Tensor conv2d(const Tensor& input, const Tensor& kernel, int stride,
              PaddingMode padding, std::size_t pad_amount);
Tensor conv2d_backward_input(const Tensor& grad_output, const Tensor& kernel,
                             const Shape& input_shape, int stride,
                             PaddingMode padding, std::size_t pad_amount);
Tensor conv2d_backward_kernel(const Tensor& input, const Tensor& grad_output,
                              const Shape& kernel_shape, int stride,
                              PaddingMode padding, std::size_t pad_amount);

// Per-channel stride-1 cross-correlation with one shared [1, 1, kH, kW]
// kernel; no channel mixing.
Tensor depthwise_conv2d(const Tensor& input, const Tensor& kernel,
                        PaddingMode padding, std::size_t pad_amount);
Tensor depthwise_conv2d_backward_input(const Tensor& grad_output,
                                       const Tensor& kernel,
                                       const Shape& input_shape,
                                       PaddingMode padding,
                                       std::size_t pad_amount);

// Square window. An axis of length 1 with no padding keeps window and
// stride 1, so single-row tensors pool as 1-D signals.
Tensor max_pool(const Tensor& input, int window, int stride,
                PaddingMode padding, std::size_t pad_amount);
// Routes each output gradient to the first maximal element of its window.
Tensor max_pool_backward(const Tensor& input, const Tensor& grad_output,
                         int window, int stride, PaddingMode padding,
                         std::size_t pad_amount);

Tensor subsample(const Tensor& input, int stride);
// Adjoint of subsample: scatters into zeros of input_shape.
Tensor subsample_backward(const Tensor& grad_output, const Shape& input_shape,
                          int stride);

// Circular shift of every plane by (dy, dx); negative values shift back.
Tensor roll(const Tensor& input, long dy, long dx);

}  // namespace aanet

#endif  // AANET_TENSOR_HPP_
