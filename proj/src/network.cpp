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

#include "aanet/network.hpp"

#include <cmath>
#include <random>
#include <string>

#include "aanet/error.hpp"

namespace aanet {

PlacementConfig PlacementConfig::baseline() { return {}; }

PlacementConfig PlacementConfig::best_model(int k) {
  PlacementConfig p;
  const BlurSpec spec{k, PaddingMode::kReflect};
  p.block_conv_strided = {Variant::kBlurAfter, spec};
  p.skip_strided = {Variant::kBlurAfter, spec};
  p.maxpool_blur = true;
  p.maxpool_blur_spec = spec;
  p.activation = Activation::kSwish;
  return p;
}

void validate(const PlacementConfig& placement) {
  for (const GroupPlacement* g :
       {&placement.initial_conv, &placement.block_conv_unstrided,
        &placement.block_conv_strided, &placement.skip_strided}) {
    validate(g->blur);
  }
  validate(placement.maxpool_blur_spec);
  if (placement.conv1_stride != 1 && placement.conv1_stride != 2) {
    throw ConfigError("conv1_stride must be 1 or 2");
  }
  if (placement.skip_strided.variant == Variant::kErf) {
    throw ConfigError(
        "erf is invalid on strided skips: their 1x1 kernels have no spatial "
        "support");
  }
  if (placement.skip_strided.variant == Variant::kBlurPoolPostActivation) {
    throw ConfigError(
        "blurpool_post_activation is invalid on skips: no activation follows");
  }
  if (placement.block_conv_unstrided.variant == Variant::kErf) {
    throw ConfigError("erf is invalid on unstrided block convolutions");
  }
  if (placement.block_conv_unstrided.variant ==
      Variant::kBlurPoolPostActivation) {
    throw ConfigError(
        "blurpool_post_activation is invalid on unstrided block convolutions");
  }
  if (placement.initial_conv.variant == Variant::kErf &&
      placement.conv1_stride == 1) {
    throw ConfigError("erf on the initial conv needs conv1_stride 2");
  }
}

void validate(const ArchSpec& arch) {
  if (arch.stages.empty()) throw ConfigError("architecture needs >= 1 stage");
  for (const StageSpec& s : arch.stages) {
    if (s.channels == 0 || s.blocks == 0) {
      throw ConfigError("stage channels and blocks must be positive");
    }
  }
  if (arch.input_channels == 0 || arch.input_size == 0 || arch.classes < 2) {
    throw ConfigError(
        "architecture needs input channels, input size and >= 2 classes");
  }
}

// --- LayerGraph --------------------------------------------------------------

LayerGraph::LayerGraph(std::unique_ptr<Sequential> features,
                       std::unique_ptr<LinearLayer> head, Shape input_shape)
    : features_(std::move(features)),
      head_(std::move(head)),
      input_shape_(input_shape) {
  features_->collect_parameters(params_);
  head_->collect_parameters(params_);
  features_->collect_buffers(buffers_);
}

void LayerGraph::check_input(const Tensor& batch) const {
  const Shape& s = batch.shape();
  if (s.c != input_shape_.c || s.h != input_shape_.h ||
      s.w != input_shape_.w) {
    throw DimensionError("batch shape " + to_string(s) +
                         " does not match network input " +
                         to_string(input_shape_));
  }
}

Tensor LayerGraph::forward(const Tensor& batch) {
  if (mode_ == Mode::kEval) return infer(batch);
  check_input(batch);
  return head_->forward(features_->forward(batch));
}

Tensor LayerGraph::infer(const Tensor& batch) const {
  return head_->infer(features(batch), nullptr);
}

Tensor LayerGraph::features(const Tensor& batch) const {
  check_input(batch);
  return features_->infer(batch, nullptr);
}

Tensor LayerGraph::classify(const Tensor& features) const {
  return head_->infer(features, nullptr);
}

ProbeSink LayerGraph::subsampling_probes(const Tensor& batch) const {
  check_input(batch);
  ProbeSink probes;
  features_->infer(batch, &probes);
  return probes;
}

double LayerGraph::loss_and_backward(const Tensor& batch,
                                     std::span<const int> labels) {
  if (mode_ != Mode::kTrain) {
    throw ArgumentError("loss_and_backward requires train mode");
  }
  zero_grad();
  const Tensor logits = forward(batch);
  CrossEntropy ce = softmax_cross_entropy(logits, labels);
  features_->backward(head_->backward(ce.grad));
  return ce.loss;
}

void LayerGraph::zero_grad() {
  for (Parameter* p : params_) p->grad.fill(0.0);
}

void LayerGraph::sgd_step(double lr, double momentum) {
  if (lr < 0.0) throw ArgumentError("learning rate must be >= 0");
  if (momentum < 0.0) throw ArgumentError("momentum must be >= 0");
  for (Parameter* p : params_) {
    auto v = p->velocity.data();
    auto g = p->grad.data();
    auto w = p->value.data();
    for (std::size_t i = 0; i < w.size(); ++i) {
      v[i] = momentum * v[i] + g[i];
      w[i] -= lr * v[i];
    }
  }
}

std::vector<const Parameter*> LayerGraph::parameters() const {
  return {params_.begin(), params_.end()};
}

std::size_t LayerGraph::parameter_count() const {
  std::size_t total = 0;
  for (const Parameter* p : params_) total += p->value.size();
  return total;
}

std::size_t LayerGraph::count_layers(LayerKind kind) const {
  std::size_t count = 0;
  visit([&](const Layer& layer, int) {
    if (layer.kind() == kind) ++count;
  });
  return count;
}

void LayerGraph::visit(const std::function<void(const Layer&, int)>& fn) const {
  features_->visit(fn, 0);
  head_->visit(fn, 0);
}

std::size_t LayerGraph::classes() const {
  return head_->weight().value.shape().n;
}

// --- loss ---------------------------------------------------------------------

CrossEntropy softmax_cross_entropy(const Tensor& logits,
                                   std::span<const int> labels) {
  const Shape& s = logits.shape();
  const std::size_t classes = s.c * s.plane_size();
  if (labels.size() != s.n) {
    throw DimensionError("got " + std::to_string(labels.size()) +
                         " labels for a batch of " + std::to_string(s.n));
  }
  CrossEntropy out{0.0, Tensor(s)};
  const double inv_n = 1.0 / static_cast<double>(s.n);
  for (std::size_t n = 0; n < s.n; ++n) {
    const int label = labels[n];
    if (label < 0 || static_cast<std::size_t>(label) >= classes) {
      throw ArgumentError("label " + std::to_string(label) +
                          " out of range for " + std::to_string(classes) +
                          " classes");
    }
    const double* row = logits.data().data() + n * classes;
    double peak = row[0];
    for (std::size_t c = 1; c < classes; ++c) peak = std::max(peak, row[c]);
    double sum = 0.0;
    for (std::size_t c = 0; c < classes; ++c) sum += std::exp(row[c] - peak);
    const double log_sum = std::log(sum) + peak;
    out.loss += (log_sum - row[label]) * inv_n;
    for (std::size_t c = 0; c < classes; ++c) {
      const double p = std::exp(row[c] - log_sum);
      out.grad[n * classes + c] =
          (p - (static_cast<std::size_t>(label) == c ? 1.0 : 0.0)) * inv_n;
    }
  }
  return out;
}

std::vector<int> argmax_rows(const Tensor& logits) {
  const Shape& s = logits.shape();
  const std::size_t classes = s.c * s.plane_size();
  std::vector<int> out(s.n, 0);
  for (std::size_t n = 0; n < s.n; ++n) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < classes; ++c) {
      if (logits[n * classes + c] > logits[n * classes + best]) best = c;
    }
    out[n] = static_cast<int>(best);
  }
  return out;
}

// --- builder ----------------------------------------------------------------

namespace {

Tensor he_normal(const Shape& shape, std::mt19937_64& rng) {
  const double fan_in = static_cast<double>(shape.c * shape.h * shape.w);
  std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / fan_in));
  Tensor t(shape);
  for (double& v : t.data()) v = dist(rng);
  return t;
}

struct UnitOptions {
  std::string name;
  GroupPlacement placement;
  std::size_t in_channels = 0;
  std::size_t out_channels = 0;
  std::size_t kernel = 3;
  int stride = 1;
  PaddingMode conv_padding = PaddingMode::kZero;
  // Whether the unit ends in its own activation; residual units whose
  // activation follows the add do not.
  bool has_activation = true;
  bool batch_norm = true;
  Activation activation = Activation::kRelu;
};

// Translates the stage plan of a variant into layers. Batch norm sits right
// before the activation stage, or at the end when the unit has none.
std::unique_ptr<Sequential> build_unit(const UnitOptions& o, Tensor weight) {
  auto unit = std::make_unique<Sequential>(o.name, /*is_unit=*/true);
  const std::vector<Stage> plan = stage_plan(o.placement.variant, o.stride,
                                             o.kernel, o.has_activation);
  int blur_index = 0;
  bool bn_added = false;
  for (const Stage& stage : plan) {
    switch (stage.kind) {
      case StageKind::kBlur:
        unit->add(std::make_unique<BlurLayer>(
            o.name + ".blur" + std::to_string(blur_index++), o.placement.blur));
        break;
      case StageKind::kConv:
        unit->add(std::make_unique<ConvLayer>(o.name + ".conv",
                                              std::move(weight), stage.stride,
                                              o.conv_padding, (o.kernel - 1) / 2));
        break;
      case StageKind::kSubsample:
        unit->add(std::make_unique<SubsampleLayer>(o.name + ".subsample",
                                                   stage.stride));
        break;
      case StageKind::kActivation:
        if (o.batch_norm) {
          unit->add(
              std::make_unique<BatchNormLayer>(o.name + ".bn", o.out_channels));
          bn_added = true;
        }
        unit->add(std::make_unique<ActivationLayer>(o.name + ".act",
                                                    o.activation));
        break;
    }
  }
  if (o.batch_norm && !bn_added) {
    unit->add(std::make_unique<BatchNormLayer>(o.name + ".bn", o.out_channels));
  }
  return unit;
}

}  // namespace

LayerGraph build_network(const ArchSpec& arch, const PlacementConfig& placement,
                         std::uint64_t seed) {
  validate(arch);
  validate(placement);
  std::mt19937_64 rng(seed);
  const PaddingMode pool_padding = arch.conv_padding == PaddingMode::kCircular
                                       ? PaddingMode::kCircular
                                       : PaddingMode::kReflect;
  auto features = std::make_unique<Sequential>("features");

  const std::size_t stem_channels = arch.stages.front().channels;
  UnitOptions stem;
  stem.name = "stem";
  stem.placement = placement.initial_conv;
  stem.in_channels = arch.input_channels;
  stem.out_channels = stem_channels;
  stem.stride = placement.conv1_stride;
  stem.conv_padding = arch.conv_padding;
  stem.activation = placement.activation;
  features->add(build_unit(
      stem, he_normal({stem_channels, arch.input_channels, 3, 3}, rng)));

  if (placement.maxpool_blur) {
    features->add(
        std::make_unique<MaxPoolLayer>("pool.max", 3, 1, pool_padding, 1));
    features->add(
        std::make_unique<BlurLayer>("pool.blur", placement.maxpool_blur_spec));
    features->add(std::make_unique<SubsampleLayer>("pool.subsample", 2));
  } else {
    features->add(
        std::make_unique<MaxPoolLayer>("pool.max", 3, 2, pool_padding, 1));
  }

  std::size_t in_channels = stem_channels;
  for (std::size_t si = 0; si < arch.stages.size(); ++si) {
    const StageSpec& stage = arch.stages[si];
    for (std::size_t bi = 0; bi < stage.blocks; ++bi) {
      const int stride = (si > 0 && bi == 0) ? 2 : 1;
      const std::string block =
          "stage" + std::to_string(si + 1) + ".block" + std::to_string(bi);
      auto main = std::make_unique<Sequential>(block + ".main");

      UnitOptions conv1;
      conv1.name = block + ".conv1";
      conv1.placement = stride > 1 ? placement.block_conv_strided
                                   : placement.block_conv_unstrided;
      conv1.in_channels = in_channels;
      conv1.out_channels = stage.channels;
      conv1.stride = stride;
      conv1.conv_padding = arch.conv_padding;
      conv1.activation = placement.activation;
      main->add(build_unit(
          conv1, he_normal({stage.channels, in_channels, 3, 3}, rng)));

      UnitOptions conv2 = conv1;
      conv2.name = block + ".conv2";
      conv2.placement = placement.block_conv_unstrided;
      conv2.in_channels = stage.channels;
      conv2.stride = 1;
      conv2.has_activation = false;
      main->add(build_unit(
          conv2, he_normal({stage.channels, stage.channels, 3, 3}, rng)));

      auto skip = std::make_unique<Sequential>(block + ".skip");
      if (stride > 1 || in_channels != stage.channels) {
        UnitOptions shortcut;
        shortcut.name = block + ".skip.unit";
        shortcut.placement =
            stride > 1 ? placement.skip_strided : GroupPlacement{};
        shortcut.in_channels = in_channels;
        shortcut.out_channels = stage.channels;
        shortcut.kernel = 1;
        shortcut.stride = stride;
        shortcut.conv_padding = arch.conv_padding;
        shortcut.has_activation = false;
        skip->add(build_unit(
            shortcut, he_normal({stage.channels, in_channels, 1, 1}, rng)));
      }
      features->add(std::make_unique<ResidualLayer>(block, std::move(main),
                                                    std::move(skip)));
      features->add(
          std::make_unique<ActivationLayer>(block + ".act", placement.activation));
      in_channels = stage.channels;
    }
  }
  features->add(std::make_unique<GlobalAvgPoolLayer>("gap"));

  std::normal_distribution<double> dist(
      0.0, std::sqrt(1.0 / static_cast<double>(in_channels)));
  Tensor weight({arch.classes, in_channels, 1, 1});
  for (double& v : weight.data()) v = dist(rng);
  auto head = std::make_unique<LinearLayer>(
      "fc", std::move(weight), Tensor({arch.classes, 1, 1, 1}, 0.0));

  return LayerGraph(std::move(features), std::move(head),
                    {0, arch.input_channels, arch.input_size, arch.input_size});
}

// --- receptive field ----------------------------------------------------------

std::unique_ptr<Sequential> make_probe_fragment(Variant variant,
                                                std::size_t kernel_extent,
                                                int stride,
                                                const BlurSpec& spec) {
  UnitOptions o;
  o.name = "probe";
  o.placement = {variant, spec};
  o.in_channels = 1;
  o.out_channels = 1;
  o.kernel = kernel_extent;
  o.stride = stride;
  o.batch_norm = false;
  return build_unit(o, Tensor({1, 1, kernel_extent, kernel_extent}, 1.0));
}

ReceptiveField receptive_field_probe(Sequential& fragment,
                                     std::size_t input_extent) {
  const Tensor input({1, 1, input_extent, input_extent}, 1.0);
  const Tensor out = fragment.forward(input);
  Tensor grad(out.shape());
  grad.at(0, 0, out.shape().h / 2, out.shape().w / 2) = 1.0;
  const Tensor grad_in = fragment.backward(grad);

  std::size_t top = input_extent, bottom = 0, left = input_extent, right = 0;
  bool any = false;
  for (std::size_t i = 0; i < input_extent; ++i) {
    for (std::size_t j = 0; j < input_extent; ++j) {
      if (std::abs(grad_in.at(0, 0, i, j)) > 0.0) {
        any = true;
        top = std::min(top, i);
        bottom = std::max(bottom, i);
        left = std::min(left, j);
        right = std::max(right, j);
      }
    }
  }
  if (!any) return {};
  return {bottom - top + 1, right - left + 1};
}

}  // namespace aanet
