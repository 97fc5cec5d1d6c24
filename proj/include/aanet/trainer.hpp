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

#ifndef AANET_TRAINER_HPP_
#define AANET_TRAINER_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "aanet/config.hpp"
#include "aanet/data.hpp"
#include "aanet/network.hpp"

namespace aanet {

struct EpochLog {
  std::size_t epoch = 0;  // 1-based
  double lr = 0.0;
  double mean_loss = 0.0;
};

// Minibatch SGD. Each epoch visits the training set in an order drawn from
// seed and the epoch index, so two runs with the same seed see identical
// batches. The final partial batch is kept. Throws NumericError as soon as a
// loss or parameter stops being finite. Leaves the network in eval mode.
std::vector<EpochLog> train(LayerGraph& net, const Dataset& data,
                            const TrainConfig& config,
                            const std::function<void(const EpochLog&)>& on_epoch = {});

// Eval-mode top-1 accuracy, processed in batches of batch_size.
double accuracy(const LayerGraph& net, const Tensor& images,
                std::span<const int> labels, std::size_t batch_size = 128);

// Eval-mode pre-classifier features of all images, N×C×1×1.
Tensor extract_features(const LayerGraph& net, const Tensor& images,
                        std::size_t batch_size = 128);

}  // namespace aanet

#endif  // AANET_TRAINER_HPP_
