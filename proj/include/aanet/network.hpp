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

#ifndef AANET_NETWORK_HPP_
#define AANET_NETWORK_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "aanet/activation.hpp"
#include "aanet/antialias.hpp"
#include "aanet/layers.hpp"

namespace aanet {

struct StageSpec {
  std::size_t channels = 16;
  std::size_t blocks = 2;
  bool operator==(const StageSpec&) const = default;
};

// Basic-block residual network. The first stage keeps the resolution of the
// stem; every later stage halves it once in its first block.
struct ArchSpec {
  std::vector<StageSpec> stages{{16, 2}, {32, 2}, {64, 2}};
  std::size_t input_channels = 1;
  std::size_t input_size = 32;
  std::size_t classes = 10;
  // Padding of the trainable 3x3 convolutions.
  PaddingMode conv_padding = PaddingMode::kZero;

  bool operator==(const ArchSpec&) const = default;
};

struct GroupPlacement {
  Variant variant = Variant::kNone;
  BlurSpec blur;
  bool operator==(const GroupPlacement&) const = default;
};

// Anti-aliasing choice for each module group:
//   initial_conv          (1) the stem convolution
//   block_conv_unstrided  (2) residual main-path convs without subsampling
//   block_conv_strided    (3) residual main-path convs with stride 2
//   skip_strided          (4) 1x1 strided shortcut convolutions
struct PlacementConfig {
  GroupPlacement initial_conv;
  GroupPlacement block_conv_unstrided;
  GroupPlacement block_conv_strided;
  GroupPlacement skip_strided;
  // Blur between the dense max and the subsampling of the stem max-pool.
  bool maxpool_blur = false;
  BlurSpec maxpool_blur_spec;
  Activation activation = Activation::kRelu;
  int conv1_stride = 2;

  bool operator==(const PlacementConfig&) const = default;

  static PlacementConfig baseline();
  // blur_after on strided block convs and strided skips, blurred max-pool,
  // swish activations.
  static PlacementConfig best_model(int k = 3);
};

// Throws ConfigError for combinations that cannot be built (erf on a 1x1 or
// unstrided conv, blurpool_post_activation where no activation follows,
// conv1_stride outside {1, 2}); ArgumentError for invalid blur sizes.
void validate(const PlacementConfig& placement);
void validate(const ArchSpec& arch);

enum class Mode { kTrain, kEval };

// The built network: stem, residual stages and global pooling form the
// feature extractor; a linear layer maps features to logits.
class LayerGraph {
 public:
  LayerGraph(std::unique_ptr<Sequential> features,
             std::unique_ptr<LinearLayer> head, Shape input_shape);

  Mode mode() const { return mode_; }
  void set_mode(Mode mode) { mode_ = mode; }

  // Train mode records the tape and updates batch-norm statistics; eval mode
  // is infer().
  Tensor forward(const Tensor& batch);
  // Eval-mode logits. Const and safe to call concurrently.
  Tensor infer(const Tensor& batch) const;
  // Eval-mode pre-classifier features, N×C×1×1.
  Tensor features(const Tensor& batch) const;
  // Applies the linear head to features().
  Tensor classify(const Tensor& features) const;
  // Eval-mode pass that records every signal entering a subsampling step.
  ProbeSink subsampling_probes(const Tensor& batch) const;

  // Mean softmax cross-entropy; zeroes and then fills every parameter
  // gradient. Requires train mode.
  double loss_and_backward(const Tensor& batch, std::span<const int> labels);
  // v = momentum * v + grad; p -= lr * v.
  void sgd_step(double lr, double momentum);
  void zero_grad();

  const std::vector<Parameter*>& parameters() { return params_; }
  std::vector<const Parameter*> parameters() const;
  const std::vector<Buffer*>& buffers() { return buffers_; }
  std::size_t parameter_count() const;
  std::size_t count_layers(LayerKind kind) const;
  void visit(const std::function<void(const Layer&, int)>& fn) const;

  const Shape& input_shape() const { return input_shape_; }
  std::size_t classes() const;
  LinearLayer& head() { return *head_; }

 private:
  void check_input(const Tensor& batch) const;

  std::unique_ptr<Sequential> features_;
  std::unique_ptr<LinearLayer> head_;
  Shape input_shape_;  // n is unused
  Mode mode_ = Mode::kTrain;
  std::vector<Parameter*> params_;
  std::vector<Buffer*> buffers_;
};

// He fan-in normal initialization of convolutions, zero biases; deterministic
// given seed.
LayerGraph build_network(const ArchSpec& arch, const PlacementConfig& placement,
                         std::uint64_t seed);

// Mean softmax cross-entropy of logits (N×C×1×1) against labels, and its
// gradient w.r.t. the logits.
struct CrossEntropy {
  double loss = 0.0;
  Tensor grad;
};
CrossEntropy softmax_cross_entropy(const Tensor& logits,
                                   std::span<const int> labels);

std::vector<int> argmax_rows(const Tensor& logits);

// One downsampling unit (no batch norm, relu last) with every trainable
// weight set to 1, for receptive-field measurements.
std::unique_ptr<Sequential> make_probe_fragment(Variant variant,
                                                std::size_t kernel_extent,
                                                int stride,
                                                const BlurSpec& spec);

struct ReceptiveField {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t side() const { return std::max(height, width); }
};

// Backpropagates a unit gradient from the centre output position of the
// fragment and returns the bounding box of input positions whose gradient
// is nonzero. The fragment is driven by an all-ones input of input_extent².
ReceptiveField receptive_field_probe(Sequential& fragment,
                                     std::size_t input_extent = 33);

}  // namespace aanet

#endif  // AANET_NETWORK_HPP_
