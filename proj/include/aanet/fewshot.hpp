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

#ifndef AANET_FEWSHOT_HPP_
#define AANET_FEWSHOT_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "aanet/tensor.hpp"

namespace aanet {

// Indices refer to the dataset the episode was drawn from. Labels are
// episode-local: class i of the episode is dataset class classes[i].
struct Episode {
  std::vector<std::size_t> support_indices;
  std::vector<int> support_labels;
  std::vector<std::size_t> query_indices;
  std::vector<int> query_labels;
  std::vector<int> classes;
  std::size_t way = 0;
  std::size_t shots = 0;

  bool operator==(const Episode&) const = default;
};

// Picks `way` classes uniformly without replacement among those with at
// least shots + query_per_class examples, shuffles each class's examples with
// the seeded generator and splits them into support and query.
// Throws ArgumentError for zero way/shots/query_per_class and DataError when
// too few classes qualify.
Episode sample_episode(std::span<const int> labels, std::size_t way,
                       std::size_t shots, std::size_t query_per_class,
                       std::uint64_t seed);

// Nearest-centroid classification. Rows of the feature tensors are samples;
// labels must cover 0..max with at least one support example each. Ties go
// to the lower class index.
std::vector<int> ncc_classify(const Tensor& support_features,
                              std::span<const int> support_labels,
                              const Tensor& query_features);

}  // namespace aanet

#endif  // AANET_FEWSHOT_HPP_
