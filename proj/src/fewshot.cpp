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

#include "aanet/fewshot.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "aanet/error.hpp"

namespace aanet {

Episode sample_episode(std::span<const int> labels, std::size_t way,
                       std::size_t shots, std::size_t query_per_class,
                       std::uint64_t seed) {
  if (way == 0 || shots == 0 || query_per_class == 0) {
    throw ArgumentError("episodes need way, shots and query_per_class >= 1");
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  std::vector<int> eligible;
  for (const auto& [label, members] : by_class) {
    if (members.size() >= shots + query_per_class) eligible.push_back(label);
  }
  if (eligible.size() < way) {
    throw DataError("only " + std::to_string(eligible.size()) +
                    " classes have " + std::to_string(shots + query_per_class) +
                    " examples; episode needs " + std::to_string(way));
  }

  std::mt19937_64 rng(seed);
  std::shuffle(eligible.begin(), eligible.end(), rng);
  eligible.resize(way);

  Episode ep;
  ep.way = way;
  ep.shots = shots;
  ep.classes = eligible;
  for (std::size_t ci = 0; ci < way; ++ci) {
    std::vector<std::size_t> members = by_class[eligible[ci]];
    std::shuffle(members.begin(), members.end(), rng);
    const int local = static_cast<int>(ci);
    for (std::size_t k = 0; k < shots; ++k) {
      ep.support_indices.push_back(members[k]);
      ep.support_labels.push_back(local);
    }
    for (std::size_t k = shots; k < shots + query_per_class; ++k) {
      ep.query_indices.push_back(members[k]);
      ep.query_labels.push_back(local);
    }
  }
  return ep;
}

std::vector<int> ncc_classify(const Tensor& support_features,
                              std::span<const int> support_labels,
                              const Tensor& query_features) {
  const std::size_t n_support = support_features.shape().n;
  if (n_support == 0 || support_labels.size() != n_support) {
    throw DimensionError("support features and labels disagree in count");
  }
  const std::size_t dim = support_features.size() / n_support;
  const std::size_t n_query = query_features.shape().n;
  if (n_query > 0 && query_features.size() / n_query != dim) {
    throw DimensionError("query feature dimension differs from support");
  }
  const int max_label =
      *std::max_element(support_labels.begin(), support_labels.end());
  if (*std::min_element(support_labels.begin(), support_labels.end()) < 0) {
    throw ArgumentError("support labels must be non-negative");
  }
  const auto classes = static_cast<std::size_t>(max_label) + 1;

  std::vector<double> centroids(classes * dim, 0.0);
  std::vector<std::size_t> counts(classes, 0);
  const auto sf = support_features.data();
  for (std::size_t i = 0; i < n_support; ++i) {
    const auto c = static_cast<std::size_t>(support_labels[i]);
    ++counts[c];
    for (std::size_t d = 0; d < dim; ++d) centroids[c * dim + d] += sf[i * dim + d];
  }
  for (std::size_t c = 0; c < classes; ++c) {
    if (counts[c] == 0) {
      throw ArgumentError("class " + std::to_string(c) +
                          " has no support examples");
    }
    for (std::size_t d = 0; d < dim; ++d) {
      centroids[c * dim + d] /= static_cast<double>(counts[c]);
    }
  }

  std::vector<int> predictions(n_query, 0);
  const auto qf = query_features.data();
  for (std::size_t q = 0; q < n_query; ++q) {
    double best = 0.0;
    for (std::size_t c = 0; c < classes; ++c) {
      double dist = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = qf[q * dim + d] - centroids[c * dim + d];
        dist += diff * diff;
      }
      if (c == 0 || dist < best) {
        best = dist;
        predictions[q] = static_cast<int>(c);
      }
    }
  }
  return predictions;
}

}  // namespace aanet
