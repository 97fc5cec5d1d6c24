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

#ifndef AANET_CHECKPOINT_HPP_
#define AANET_CHECKPOINT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "aanet/network.hpp"
#include "aanet/tensor.hpp"

namespace aanet {

// Binary layout, all integers big-endian:
//   "AANET1\n"
//   u32 entry count
//   per entry: u32 name length, UTF-8 name, u32 rank, rank × u32 dims,
//              product(dims) × IEEE-754 binary64
struct NamedTensor {
  std::string name;
  Tensor value;
  bool operator==(const NamedTensor&) const = default;
};

inline constexpr char kCheckpointMagic[] = "AANET1\n";

std::vector<char> encode_checkpoint(const std::vector<NamedTensor>& entries);
// Throws DataError on bad magic, truncation or trailing bytes.
std::vector<NamedTensor> decode_checkpoint(const std::vector<char>& bytes);

// Trainable parameters followed by batch-norm running statistics.
std::vector<NamedTensor> network_state(LayerGraph& net);
// Throws DataError when names or shapes disagree with the network.
void load_network_state(LayerGraph& net, const std::vector<NamedTensor>& entries);

void save_checkpoint(const std::filesystem::path& path, LayerGraph& net);
void load_checkpoint(const std::filesystem::path& path, LayerGraph& net);

}  // namespace aanet

#endif  // AANET_CHECKPOINT_HPP_
