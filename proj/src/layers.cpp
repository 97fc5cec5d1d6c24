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

#include "aanet/layers.hpp"

#include <cmath>

#include "aanet/error.hpp"

namespace aanet {

std::string_view to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv:
      return "conv";
    case LayerKind::kBlur:
      return "blur";
    case LayerKind::kSubsample:
      return "subsample";
    case LayerKind::kBatchNorm:
      return "batch_norm";
    case LayerKind::kActivation:
      return "activation";
    case LayerKind::kMaxPool:
      return "max_pool";
    case LayerKind::kResidual:
      return "residual";
    case LayerKind::kGlobalAvgPool:
      return "global_avg_pool";
    case LayerKind::kLinear:
      return "linear";
    case LayerKind::kSequential:
      return "sequential";
  }
  return "unknown";
}

namespace {

void add_into(Tensor& dst, const Tensor& src) {
  if (dst.shape() != src.shape()) {
    throw DimensionError("cannot add " + to_string(src.shape()) + " into " +
                         to_string(dst.shape()));
  }
  auto d = dst.data();
  auto s = src.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += s[i];
}

}  // namespace

// --- conv -------------------------------------------------------------------

ConvLayer::ConvLayer(std::string name, Tensor weight, int stride,
                     PaddingMode padding, std::size_t pad_amount)
    : Layer(name),
      weight_(name + ".weight", std::move(weight)),
      stride_(stride),
      padding_(padding),
      pad_amount_(pad_amount) {}

Tensor ConvLayer::infer(const Tensor& x, ProbeSink* probes) const {
  if (probes != nullptr && stride_ > 1) {
    probes->push_back(
        {name(), stride_, conv2d(x, weight_.value, 1, padding_, pad_amount_)});
  }
  return conv2d(x, weight_.value, stride_, padding_, pad_amount_);
}

Tensor ConvLayer::forward(const Tensor& x) {
  input_ = x;
  return conv2d(x, weight_.value, stride_, padding_, pad_amount_);
}

Tensor ConvLayer::backward(const Tensor& grad_output) {
  add_into(weight_.grad,
           conv2d_backward_kernel(input_, grad_output, weight_.value.shape(),
                                  stride_, padding_, pad_amount_));
  return conv2d_backward_input(grad_output, weight_.value, input_.shape(),
                               stride_, padding_, pad_amount_);
}

// --- blur -------------------------------------------------------------------

BlurLayer::BlurLayer(std::string name, BlurSpec spec)
    : Layer(std::move(name)), spec_(spec) {
  validate(spec_);
}

Tensor BlurLayer::infer(const Tensor& x, ProbeSink* /*probes*/) const {
  return blur(x, spec_);
}

Tensor BlurLayer::forward(const Tensor& x) {
  input_shape_ = x.shape();
  return blur(x, spec_);
}

Tensor BlurLayer::backward(const Tensor& grad_output) {
  return blur_backward(grad_output, input_shape_, spec_);
}

// --- subsample --------------------------------------------------------------

SubsampleLayer::SubsampleLayer(std::string name, int stride)
    : Layer(std::move(name)), stride_(stride) {
  if (stride < 1) throw ArgumentError("subsample stride must be >= 1");
}

Tensor SubsampleLayer::infer(const Tensor& x, ProbeSink* probes) const {
  if (probes != nullptr && stride_ > 1) probes->push_back({name(), stride_, x});
  return subsample(x, stride_);
}

Tensor SubsampleLayer::forward(const Tensor& x) {
  input_shape_ = x.shape();
  return subsample(x, stride_);
}

Tensor SubsampleLayer::backward(const Tensor& grad_output) {
  return subsample_backward(grad_output, input_shape_, stride_);
}

// --- batch norm -------------------------------------------------------------

BatchNormLayer::BatchNormLayer(std::string name, std::size_t channels,
                               double momentum, double epsilon)
    : Layer(name),
      gamma_(name + ".gamma", Tensor({channels, 1, 1, 1}, 1.0)),
      beta_(name + ".beta", Tensor({channels, 1, 1, 1}, 0.0)),
      running_mean_{name + ".running_mean", Tensor({channels, 1, 1, 1}, 0.0)},
      running_var_{name + ".running_var", Tensor({channels, 1, 1, 1}, 1.0)},
      momentum_(momentum),
      epsilon_(epsilon) {}

Tensor BatchNormLayer::infer(const Tensor& x, ProbeSink* /*probes*/) const {
  const Shape& s = x.shape();
  if (s.c != gamma_.value.size()) {
    throw DimensionError(name() + ": expected " +
                         std::to_string(gamma_.value.size()) + " channels");
  }
  Tensor out(s);
  for (std::size_t c = 0; c < s.c; ++c) {
    const double scale =
        gamma_.value[c] / std::sqrt(running_var_.value[c] + epsilon_);
    const double shift = beta_.value[c] - running_mean_.value[c] * scale;
    for (std::size_t n = 0; n < s.n; ++n) {
      auto src = x.plane(n, c);
      auto dst = out.plane(n, c);
      for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] * scale + shift;
    }
  }
  return out;
}

Tensor BatchNormLayer::forward(const Tensor& x) {
  const Shape& s = x.shape();
  if (s.c != gamma_.value.size()) {
    throw DimensionError(name() + ": expected " +
                         std::to_string(gamma_.value.size()) + " channels");
  }
  const double count = static_cast<double>(s.n * s.plane_size());
  normalized_ = Tensor(s);
  inv_std_.assign(s.c, 0.0);
  Tensor out(s);
  for (std::size_t c = 0; c < s.c; ++c) {
    double mean = 0.0;
    for (std::size_t n = 0; n < s.n; ++n) {
      for (double v : x.plane(n, c)) mean += v;
    }
    mean /= count;
    double var = 0.0;
    for (std::size_t n = 0; n < s.n; ++n) {
      for (double v : x.plane(n, c)) var += (v - mean) * (v - mean);
    }
    var /= count;
    const double inv_std = 1.0 / std::sqrt(var + epsilon_);
    inv_std_[c] = inv_std;
    for (std::size_t n = 0; n < s.n; ++n) {
      auto src = x.plane(n, c);
      auto xhat = normalized_.plane(n, c);
      auto dst = out.plane(n, c);
      for (std::size_t i = 0; i < src.size(); ++i) {
        xhat[i] = (src[i] - mean) * inv_std;
        dst[i] = gamma_.value[c] * xhat[i] + beta_.value[c];
      }
    }
    const double unbiased = count > 1.0 ? var * count / (count - 1.0) : var;
    running_mean_.value[c] =
        momentum_ * running_mean_.value[c] + (1.0 - momentum_) * mean;
    running_var_.value[c] =
        momentum_ * running_var_.value[c] + (1.0 - momentum_) * unbiased;
  }
  return out;
}

Tensor BatchNormLayer::backward(const Tensor& grad_output) {
  const Shape& s = grad_output.shape();
  const double count = static_cast<double>(s.n * s.plane_size());
  Tensor grad(s);
  for (std::size_t c = 0; c < s.c; ++c) {
    double sum_g = 0.0;
    double sum_gx = 0.0;
    for (std::size_t n = 0; n < s.n; ++n) {
      auto g = grad_output.plane(n, c);
      auto xhat = normalized_.plane(n, c);
      for (std::size_t i = 0; i < g.size(); ++i) {
        sum_g += g[i];
        sum_gx += g[i] * xhat[i];
      }
    }
    gamma_.grad[c] += sum_gx;
    beta_.grad[c] += sum_g;
    const double k = gamma_.value[c] * inv_std_[c] / count;
    for (std::size_t n = 0; n < s.n; ++n) {
      auto g = grad_output.plane(n, c);
      auto xhat = normalized_.plane(n, c);
      auto dst = grad.plane(n, c);
      for (std::size_t i = 0; i < g.size(); ++i) {
        dst[i] = k * (count * g[i] - sum_g - xhat[i] * sum_gx);
      }
    }
  }
  return grad;
}

// --- activation -------------------------------------------------------------

ActivationLayer::ActivationLayer(std::string name, Activation act)
    : Layer(std::move(name)), act_(act) {}

Tensor ActivationLayer::infer(const Tensor& x, ProbeSink* /*probes*/) const {
  Tensor out = x;
  for (double& v : out.data()) v = activate(act_, v);
  return out;
}

Tensor ActivationLayer::forward(const Tensor& x) {
  input_ = x;
  return infer(x, nullptr);
}

Tensor ActivationLayer::backward(const Tensor& grad_output) {
  Tensor grad = grad_output;
  auto g = grad.data();
  auto in = input_.data();
  for (std::size_t i = 0; i < g.size(); ++i) g[i] *= activate_derivative(act_, in[i]);
  return grad;
}

// --- max pool ---------------------------------------------------------------

MaxPoolLayer::MaxPoolLayer(std::string name, int window, int stride,
                           PaddingMode padding, std::size_t pad_amount)
    : Layer(std::move(name)),
      window_(window),
      stride_(stride),
      padding_(padding),
      pad_amount_(pad_amount) {}

Tensor MaxPoolLayer::infer(const Tensor& x, ProbeSink* probes) const {
  if (probes != nullptr && stride_ > 1) {
    probes->push_back(
        {name(), stride_, max_pool(x, window_, 1, padding_, pad_amount_)});
  }
  return max_pool(x, window_, stride_, padding_, pad_amount_);
}

Tensor MaxPoolLayer::forward(const Tensor& x) {
  input_ = x;
  return max_pool(x, window_, stride_, padding_, pad_amount_);
}

Tensor MaxPoolLayer::backward(const Tensor& grad_output) {
  return max_pool_backward(input_, grad_output, window_, stride_, padding_,
                           pad_amount_);
}

// --- global average pool ----------------------------------------------------

Tensor GlobalAvgPoolLayer::infer(const Tensor& x, ProbeSink* /*probes*/) const {
  const Shape& s = x.shape();
  Tensor out({s.n, s.c, 1, 1});
  const double scale = 1.0 / static_cast<double>(s.plane_size());
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t c = 0; c < s.c; ++c) {
      double acc = 0.0;
      for (double v : x.plane(n, c)) acc += v;
      out.at(n, c, 0, 0) = acc * scale;
    }
  }
  return out;
}

Tensor GlobalAvgPoolLayer::forward(const Tensor& x) {
  input_shape_ = x.shape();
  return infer(x, nullptr);
}

Tensor GlobalAvgPoolLayer::backward(const Tensor& grad_output) {
  const Shape& s = input_shape_;
  Tensor grad(s);
  const double scale = 1.0 / static_cast<double>(s.plane_size());
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t c = 0; c < s.c; ++c) {
      const double g = grad_output.at(n, c, 0, 0) * scale;
      for (double& v : grad.plane(n, c)) v = g;
    }
  }
  return grad;
}

// --- linear -----------------------------------------------------------------

LinearLayer::LinearLayer(std::string name, Tensor weight, Tensor bias)
    : Layer(name),
      weight_(name + ".weight", std::move(weight)),
      bias_(name + ".bias", std::move(bias)) {
  if (bias_.value.size() != weight_.value.shape().n) {
    throw DimensionError(this->name() + ": bias length does not match outputs");
  }
}

Tensor LinearLayer::infer(const Tensor& x, ProbeSink* /*probes*/) const {
  const Shape& s = x.shape();
  const std::size_t in = s.c * s.plane_size();
  const Shape& ws = weight_.value.shape();
  if (in != ws.c) {
    throw DimensionError(name() + ": expected " + std::to_string(ws.c) +
                         " input features, got " + std::to_string(in));
  }
  Tensor out({s.n, ws.n, 1, 1});
  const auto w = weight_.value.data();
  const auto xd = x.data();
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t o = 0; o < ws.n; ++o) {
      double acc = bias_.value[o];
      for (std::size_t i = 0; i < in; ++i) acc += w[o * in + i] * xd[n * in + i];
      out[n * ws.n + o] = acc;
    }
  }
  return out;
}

Tensor LinearLayer::forward(const Tensor& x) {
  input_ = x;
  return infer(x, nullptr);
}

Tensor LinearLayer::backward(const Tensor& grad_output) {
  const Shape& s = input_.shape();
  const std::size_t in = s.c * s.plane_size();
  const std::size_t outs = weight_.value.shape().n;
  Tensor grad(s);
  const auto w = weight_.value.data();
  const auto xd = input_.data();
  auto gw = weight_.grad.data();
  auto gx = grad.data();
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t o = 0; o < outs; ++o) {
      const double g = grad_output[n * outs + o];
      bias_.grad[o] += g;
      for (std::size_t i = 0; i < in; ++i) {
        gw[o * in + i] += g * xd[n * in + i];
        gx[n * in + i] += g * w[o * in + i];
      }
    }
  }
  return grad;
}

// --- containers -------------------------------------------------------------

Tensor Sequential::infer(const Tensor& x, ProbeSink* probes) const {
  Tensor out = x;
  for (const LayerPtr& layer : layers_) out = layer->infer(out, probes);
  return out;
}

Tensor Sequential::forward(const Tensor& x) {
  Tensor out = x;
  for (LayerPtr& layer : layers_) out = layer->forward(out);
  return out;
}

Tensor Sequential::backward(const Tensor& grad_output) {
  Tensor grad = grad_output;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    grad = (*it)->backward(grad);
  }
  return grad;
}

void Sequential::collect_parameters(std::vector<Parameter*>& out) {
  for (LayerPtr& layer : layers_) layer->collect_parameters(out);
}

void Sequential::collect_buffers(std::vector<Buffer*>& out) {
  for (LayerPtr& layer : layers_) layer->collect_buffers(out);
}

void Sequential::visit(const std::function<void(const Layer&, int)>& fn,
                       int depth) const {
  fn(*this, depth);
  for (const LayerPtr& layer : layers_) layer->visit(fn, depth + 1);
}

Layer& Sequential::add(LayerPtr layer) {
  layers_.push_back(std::move(layer));
  return *layers_.back();
}

ResidualLayer::ResidualLayer(std::string name, std::unique_ptr<Sequential> main,
                             std::unique_ptr<Sequential> skip)
    : Layer(std::move(name)), main_(std::move(main)), skip_(std::move(skip)) {}

Tensor ResidualLayer::infer(const Tensor& x, ProbeSink* probes) const {
  Tensor out = main_->infer(x, probes);
  add_into(out, skip_->infer(x, probes));
  return out;
}

Tensor ResidualLayer::forward(const Tensor& x) {
  Tensor out = main_->forward(x);
  add_into(out, skip_->forward(x));
  return out;
}

Tensor ResidualLayer::backward(const Tensor& grad_output) {
  Tensor grad = main_->backward(grad_output);
  add_into(grad, skip_->backward(grad_output));
  return grad;
}

void ResidualLayer::collect_parameters(std::vector<Parameter*>& out) {
  main_->collect_parameters(out);
  skip_->collect_parameters(out);
}

void ResidualLayer::collect_buffers(std::vector<Buffer*>& out) {
  main_->collect_buffers(out);
  skip_->collect_buffers(out);
}

void ResidualLayer::visit(const std::function<void(const Layer&, int)>& fn,
                          int depth) const {
  fn(*this, depth);
  main_->visit(fn, depth + 1);
  skip_->visit(fn, depth + 1);
}

}  // namespace aanet
