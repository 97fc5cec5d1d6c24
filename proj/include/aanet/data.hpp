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

#ifndef AANET_DATA_HPP_
#define AANET_DATA_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "aanet/tensor.hpp"

namespace aanet {

// Images in [0, 1] with one integer label per sample.
struct Dataset {
  Tensor images;
  std::vector<int> labels;
  std::size_t classes = 0;

  std::size_t size() const { return labels.size(); }
};

// Copies the selected samples into a new batch.
Tensor gather(const Tensor& images, std::span<const std::size_t> indices);
std::vector<int> gather(std::span<const int> labels,
                        std::span<const std::size_t> indices);

// IDX files: big-endian magic 0x00000803 (u8 images, N×rows×cols) and
// 0x00000801 (u8 labels, N). Pixels are scaled by 1/255.
Dataset load_idx(const std::filesystem::path& images,
                 const std::filesystem::path& labels);
Dataset parse_idx(std::span<const unsigned char> images,
                  std::span<const unsigned char> labels);
// Writes single-channel images, quantized with round(255 * x).
void write_idx(const std::filesystem::path& images,
               const std::filesystem::path& labels, const Dataset& data);
std::vector<unsigned char> encode_idx_images(const Tensor& images);
std::vector<unsigned char> encode_idx_labels(std::span<const int> labels);

enum class Generator { kStripes, kShapes };

std::string_view to_string(Generator g);
Generator parse_generator(std::string_view name);

// stripes: clipped-cosine gratings with an integer number of cycles across
//          the image (so circular shifts only change their phase), label =
//          orientation bin of width pi / classes, radial frequency in
//          [0.36, 0.48] cycles/px, above the stride-2 limit on at least one
//          axis. Amplitude, gain and mean level vary per sample.
// shapes:  filled regular polygons at random positions, label = vertex count
//          bin.
// Labels cycle through the classes so every class gets size/classes or one
// more sample.
Dataset make_synthetic(Generator generator, std::size_t size,
                       std::size_t classes, std::size_t image_size,
                       std::uint64_t seed);

}  // namespace aanet

#endif  // AANET_DATA_HPP_
