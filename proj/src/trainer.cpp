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

#include "aanet/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "aanet/error.hpp"

namespace aanet {

namespace {

std::vector<std::size_t> range_indices(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> idx(end - begin);
  std::iota(idx.begin(), idx.end(), begin);
  return idx;
}

}  // namespace

std::vector<EpochLog> train(LayerGraph& net, const Dataset& data,
                            const TrainConfig& config,
                            const std::function<void(const EpochLog&)>& on_epoch) {
  if (config.batch == 0) throw ConfigError("batch size must be >= 1");
  if (data.size() == 0) throw DataError("training set is empty");
  net.set_mode(Mode::kTrain);
  std::vector<EpochLog> logs;
  double lr = config.lr;
  std::vector<std::size_t> order = range_indices(0, data.size());
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::mt19937_64 rng(config.seed ^ (0x9e3779b97f4a7c15ULL * epoch));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch) {
      const std::size_t end = std::min(order.size(), start + config.batch);
      std::span<const std::size_t> idx(order.data() + start, end - start);
      const Tensor batch = gather(data.images, idx);
      const std::vector<int> labels = gather(data.labels, idx);
      const double loss = net.loss_and_backward(batch, labels);
      if (!std::isfinite(loss)) {
        throw NumericError("loss became " + std::to_string(loss) + " in epoch " +
                           std::to_string(epoch));
      }
      loss_sum += loss * static_cast<double>(idx.size());
      net.sgd_step(lr, config.momentum);
      for (const Parameter* p : net.parameters()) {
        if (!p->value.all_finite()) {
          throw NumericError("parameter " + p->name + " became non-finite in epoch " +
                             std::to_string(epoch));
        }
      }
    }
    EpochLog log{epoch, lr, loss_sum / static_cast<double>(data.size())};
    logs.push_back(log);
    if (on_epoch) on_epoch(log);
    lr *= config.lr_decay;
  }
  net.set_mode(Mode::kEval);
  return logs;
}

double accuracy(const LayerGraph& net, const Tensor& images,
                std::span<const int> labels, std::size_t batch_size) {
  const std::size_t n = images.shape().n;
  if (labels.size() != n) throw DimensionError("image and label counts differ");
  if (n == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t start = 0; start < n; start += batch_size) {
    const auto idx = range_indices(start, std::min(n, start + batch_size));
    const std::vector<int> pred = argmax_rows(net.infer(gather(images, idx)));
    for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == labels[start + i];
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

Tensor extract_features(const LayerGraph& net, const Tensor& images,
                        std::size_t batch_size) {
  const std::size_t n = images.shape().n;
  std::vector<double> values;
  std::size_t dim = 0;
  for (std::size_t start = 0; start < n; start += batch_size) {
    const auto idx = range_indices(start, std::min(n, start + batch_size));
    const Tensor f = net.features(gather(images, idx));
    dim = f.shape().c;
    values.insert(values.end(), f.data().begin(), f.data().end());
  }
  return Tensor({n, dim, 1, 1}, std::move(values));
}

}  // namespace aanet
