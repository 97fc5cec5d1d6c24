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

#ifndef AANET_LAYERS_HPP_
#define AANET_LAYERS_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "aanet/activation.hpp"
#include "aanet/antialias.hpp"
#include "aanet/tensor.hpp"

namespace aanet {

enum class LayerKind {
  kConv,
  kBlur,
  kSubsample,
  kBatchNorm,
  kActivation,
  kMaxPool,
  kResidual,
  kGlobalAvgPool,
  kLinear,
  kSequential,
};

std::string_view to_string(LayerKind kind);

// A trainable tensor together with its gradient and momentum buffer.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;
  Tensor velocity;

  explicit Parameter(std::string n, Tensor v)
      : name(std::move(n)),
        value(std::move(v)),
        grad(value.shape()),
        velocity(value.shape()) {}
};

// Non-trainable state saved with a checkpoint (batch-norm running stats).
struct Buffer {
  std::string name;
  Tensor value;
};

// The dense signal entering a subsampling step: the stride-1 output of a
// strided conv or max-pool, or the input of an explicit subsample.
struct SubsampleProbe {
  std::string layer;
  int stride = 1;
  Tensor signal;
};

using ProbeSink = std::vector<SubsampleProbe>;

// Every layer has two forward paths. infer() is const and reentrant;
// forward() records what backward() needs and is single-writer.
class Layer {
 public:
  explicit Layer(std::string name) : name_(std::move(name)) {}
  virtual ~Layer() = default;
  Layer(const Layer&) = delete;
  Layer& operator=(const Layer&) = delete;

  const std::string& name() const { return name_; }
  virtual LayerKind kind() const = 0;

  virtual Tensor infer(const Tensor& x, ProbeSink* probes) const = 0;
  virtual Tensor forward(const Tensor& x) = 0;
  // Returns the gradient w.r.t. the input of the last forward() and
  // accumulates parameter gradients.
  virtual Tensor backward(const Tensor& grad_output) = 0;

  virtual void collect_parameters(std::vector<Parameter*>& /*out*/) {}
  virtual void collect_buffers(std::vector<Buffer*>& /*out*/) {}
  // Pre-order traversal.
  virtual void visit(const std::function<void(const Layer&, int)>& fn,
                     int depth = 0) const {
    fn(*this, depth);
  }

 private:
  std::string name_;
};

using LayerPtr = std::unique_ptr<Layer>;

class ConvLayer : public Layer {
 public:
  ConvLayer(std::string name, Tensor weight, int stride, PaddingMode padding,
            std::size_t pad_amount);
  LayerKind kind() const override { return LayerKind::kConv; }
  Tensor infer(const Tensor& x, ProbeSink* probes) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_output) override;
  void collect_parameters(std::vector<Parameter*>& out) override {
    out.push_back(&weight_);
  }
  int stride() const { return stride_; }
  const Parameter& weight() const { return weight_; }
  Parameter& weight() { return weight_; }

 private:
  Parameter weight_;
  int stride_;
  PaddingMode padding_;
  std::size_t pad_amount_;
  Tensor input_;
};

class BlurLayer : public Layer {
 public:
  BlurLayer(std::string name, BlurSpec spec);
  LayerKind kind() const override { return LayerKind::kBlur; }
  Tensor infer(const Tensor& x, ProbeSink* probes) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_output) override;
  const BlurSpec& spec() const { return spec_; }

 private:
  BlurSpec spec_;
  Shape input_shape_;
};

class SubsampleLayer : public Layer {
 public:
  SubsampleLayer(std::string name, int stride);
  LayerKind kind() const override { return LayerKind::kSubsample; }
  Tensor infer(const Tensor& x, ProbeSink* probes) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_output) override;
  int stride() const { return stride_; }

 private:
  int stride_;
  Shape input_shape_;
};

// Per-channel batch normalization; running averages use
// running = momentum * running + (1 - momentum) * batch.
class BatchNormLayer : public Layer {
 public:
  BatchNormLayer(std::string name, std::size_t channels,
                 double momentum = 0.9, double epsilon = 1e-5);
  LayerKind kind() const override { return LayerKind::kBatchNorm; }
  Tensor infer(const Tensor& x, ProbeSink* probes) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_output) override;
  void collect_parameters(std::vector<Parameter*>& out) override {
    out.push_back(&gamma_);
    out.push_back(&beta_);
  }
  void collect_buffers(std::vector<Buffer*>& out) override {
    out.push_back(&running_mean_);
    out.push_back(&running_var_);
  }

 private:
  Parameter gamma_;
  Parameter beta_;
  Buffer running_mean_;
  Buffer running_var_;
  double momentum_;
  double epsilon_;
  Tensor normalized_;
  std::vector<double> inv_std_;
};

class ActivationLayer : public Layer {
 public:
  ActivationLayer(std::string name, Activation act);
  LayerKind kind() const override { return LayerKind::kActivation; }
  Tensor infer(const Tensor& x, ProbeSink* probes) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_output) override;
  Activation activation() const { return act_; }

 private:
  Activation act_;
  Tensor input_;
};

class MaxPoolLayer : public Layer {
 public:
  MaxPoolLayer(std::string name, int window, int stride, PaddingMode padding,
               std::size_t pad_amount);
  LayerKind kind() const override { return LayerKind::kMaxPool; }
  Tensor infer(const Tensor& x, ProbeSink* probes) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_output) override;
  int stride() const { return stride_; }

 private:
  int window_;
  int stride_;
  PaddingMode padding_;
  std::size_t pad_amount_;
  Tensor input_;
};

// Mean over each H×W plane; output is N×C×1×1.
class GlobalAvgPoolLayer : public Layer {
 public:
  explicit GlobalAvgPoolLayer(std::string name) : Layer(std::move(name)) {}
  LayerKind kind() const override { return LayerKind::kGlobalAvgPool; }
  Tensor infer(const Tensor& x, ProbeSink* probes) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_output) override;

 private:
  Shape input_shape_;
};

// Fully connected layer over the flattened C×H×W features; output N×out×1×1.
// weight is [out, in, 1, 1], bias is [out, 1, 1, 1].
class LinearLayer : public Layer {
 public:
  LinearLayer(std::string name, Tensor weight, Tensor bias);
  LayerKind kind() const override { return LayerKind::kLinear; }
  Tensor infer(const Tensor& x, ProbeSink* probes) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_output) override;
  void collect_parameters(std::vector<Parameter*>& out) override {
    out.push_back(&weight_);
    out.push_back(&bias_);
  }
  Parameter& weight() { return weight_; }
  Parameter& bias() { return bias_; }

 private:
  Parameter weight_;
  Parameter bias_;
  Tensor input_;
};

class Sequential : public Layer {
 public:
  // A unit is the sequence built around exactly one trainable convolution.
  explicit Sequential(std::string name, bool is_unit = false)
      : Layer(std::move(name)), is_unit_(is_unit) {}
  LayerKind kind() const override { return LayerKind::kSequential; }
  Tensor infer(const Tensor& x, ProbeSink* probes) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_output) override;
  void collect_parameters(std::vector<Parameter*>& out) override;
  void collect_buffers(std::vector<Buffer*>& out) override;
  void visit(const std::function<void(const Layer&, int)>& fn,
             int depth = 0) const override;

  Layer& add(LayerPtr layer);
  bool empty() const { return layers_.empty(); }
  bool is_unit() const { return is_unit_; }
  const std::vector<LayerPtr>& layers() const { return layers_; }

 private:
  bool is_unit_;
  std::vector<LayerPtr> layers_;
};

// out = main(x) + skip(x); an empty skip is the identity.
class ResidualLayer : public Layer {
 public:
  ResidualLayer(std::string name, std::unique_ptr<Sequential> main,
                std::unique_ptr<Sequential> skip);
  LayerKind kind() const override { return LayerKind::kResidual; }
  Tensor infer(const Tensor& x, ProbeSink* probes) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_output) override;
  void collect_parameters(std::vector<Parameter*>& out) override;
  void collect_buffers(std::vector<Buffer*>& out) override;
  void visit(const std::function<void(const Layer&, int)>& fn,
             int depth = 0) const override;

  const Sequential& main_path() const { return *main_; }
  const Sequential& skip_path() const { return *skip_; }

 private:
  std::unique_ptr<Sequential> main_;
  std::unique_ptr<Sequential> skip_;
};

}  // namespace aanet

#endif  // AANET_LAYERS_HPP_
