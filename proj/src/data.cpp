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

#include "aanet/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <string>

#include "aanet/error.hpp"

namespace aanet {

Tensor gather(const Tensor& images, std::span<const std::size_t> indices) {
  const Shape& s = images.shape();
  const std::size_t per = s.c * s.plane_size();
  Tensor out({indices.size(), s.c, s.h, s.w});
  auto dst = out.data();
  const auto src = images.data();
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= s.n) throw DimensionError("sample index out of range");
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(indices[k] * per), per,
                dst.begin() + static_cast<std::ptrdiff_t>(k * per));
  }
  return out;
}

std::vector<int> gather(std::span<const int> labels,
                        std::span<const std::size_t> indices) {
  std::vector<int> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(labels[i]);
  return out;
}

// --- IDX ---------------------------------------------------------------------

namespace {

constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

std::uint32_t read_be32(std::span<const unsigned char> bytes, std::size_t at,
                        const char* what) {
  if (at + 4 > bytes.size()) {
    throw DataError(std::string(what) + ": truncated header");
  }
  return (std::uint32_t{bytes[at]} << 24) | (std::uint32_t{bytes[at + 1]} << 16) |
         (std::uint32_t{bytes[at + 2]} << 8) | std::uint32_t{bytes[at + 3]};
}

void put_be32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v >> 24));
  out.push_back(static_cast<unsigned char>(v >> 16));
  out.push_back(static_cast<unsigned char>(v >> 8));
  out.push_back(static_cast<unsigned char>(v));
}

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path,
                const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

Dataset parse_idx(std::span<const unsigned char> images,
                  std::span<const unsigned char> labels) {
  if (read_be32(images, 0, "images") != kIdxImagesMagic) {
    throw DataError("images: bad IDX magic, expected 0x00000803");
  }
  if (read_be32(labels, 0, "labels") != kIdxLabelsMagic) {
    throw DataError("labels: bad IDX magic, expected 0x00000801");
  }
  const std::size_t n = read_be32(images, 4, "images");
  const std::size_t rows = read_be32(images, 8, "images");
  const std::size_t cols = read_be32(images, 12, "images");
  const std::size_t n_labels = read_be32(labels, 4, "labels");
  if (images.size() != 16 + n * rows * cols) {
    throw DataError("images: payload holds " + std::to_string(images.size() - 16) +
                    " bytes, header declares " + std::to_string(n * rows * cols));
  }
  if (labels.size() != 8 + n_labels) {
    throw DataError("labels: payload holds " + std::to_string(labels.size() - 8) +
                    " bytes, header declares " + std::to_string(n_labels));
  }
  if (n != n_labels) {
    throw DataError("image count " + std::to_string(n) +
                    " does not match label count " + std::to_string(n_labels));
  }
  Dataset data;
  data.images = Tensor({n, 1, rows, cols});
  auto px = data.images.data();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = images[16 + i] / 255.0;
  data.labels.resize(n);
  int max_label = -1;
  for (std::size_t i = 0; i < n; ++i) {
    data.labels[i] = labels[8 + i];
    max_label = std::max(max_label, data.labels[i]);
  }
  data.classes = static_cast<std::size_t>(max_label + 1);
  return data;
}

Dataset load_idx(const std::filesystem::path& images,
                 const std::filesystem::path& labels) {
  const auto image_bytes = read_file(images);
  const auto label_bytes = read_file(labels);
  return parse_idx(image_bytes, label_bytes);
}

std::vector<unsigned char> encode_idx_images(const Tensor& images) {
  const Shape& s = images.shape();
  if (s.c != 1) throw DimensionError("IDX images must have one channel");
  std::vector<unsigned char> out;
  put_be32(out, kIdxImagesMagic);
  put_be32(out, static_cast<std::uint32_t>(s.n));
  put_be32(out, static_cast<std::uint32_t>(s.h));
  put_be32(out, static_cast<std::uint32_t>(s.w));
  for (double v : images.data()) {
    out.push_back(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
  }
  return out;
}

std::vector<unsigned char> encode_idx_labels(std::span<const int> labels) {
  std::vector<unsigned char> out;
  put_be32(out, kIdxLabelsMagic);
  put_be32(out, static_cast<std::uint32_t>(labels.size()));
  for (int l : labels) {
    if (l < 0 || l > 255) throw DataError("IDX labels must fit in one byte");
    out.push_back(static_cast<unsigned char>(l));
  }
  return out;
}

void write_idx(const std::filesystem::path& images,
               const std::filesystem::path& labels, const Dataset& data) {
  write_file(images, encode_idx_images(data.images));
  write_file(labels, encode_idx_labels(data.labels));
}

// --- synthetic -----------------------------------------------------------------

std::string_view to_string(Generator g) {
  return g == Generator::kStripes ? "stripes" : "shapes";
}

Generator parse_generator(std::string_view name) {
  if (name == "stripes") return Generator::kStripes;
  if (name == "shapes") return Generator::kShapes;
  throw ConfigError("unknown synthetic generator '" + std::string(name) + "'");
}

namespace {

constexpr double kPi = std::numbers::pi;

// Integer frequency vectors (cycles per image) of one orientation class.
// Only gratings that tile the image exactly are used, so a circular shift of
// a sample is the same grating at another phase.
std::vector<std::pair<int, int>> class_frequencies(std::size_t size, std::size_t classes,
                                                   std::size_t label) {
  const double s = static_cast<double>(size);
  const double lo = 0.36 * s, hi = 0.48 * s;
  const double bin = kPi / static_cast<double>(classes);
  const double centre = bin * static_cast<double>(label);
  std::vector<std::pair<int, int>> best;
  double best_dev = 0.0;
  std::vector<std::pair<int, int>> within;
  const int r = static_cast<int>(std::ceil(hi));
  for (int ky = -r; ky <= r; ++ky) {
    for (int kx = -r; kx <= r; ++kx) {
      const double len = std::hypot(kx, ky);
      if (len < lo || len > hi) continue;
      // orientation modulo pi
      double a = std::atan2(static_cast<double>(ky), static_cast<double>(kx));
      if (a < 0) a += kPi;
      if (a >= kPi) a -= kPi;
      double dev = std::abs(a - centre);
      dev = std::min(dev, kPi - dev);
      if (dev <= bin / 4.0) within.emplace_back(kx, ky);
      if (best.empty() || dev < best_dev - 1e-12) {
        best = {{kx, ky}};
        best_dev = dev;
      } else if (std::abs(dev - best_dev) <= 1e-12) {
        best.emplace_back(kx, ky);
      }
    }
  }
  return within.empty() ? best : within;
}

// Square-ish grating: a clipped cosine with random gain, amplitude and mean
// level, plus pixel noise.
void stripes_image(std::span<double> img, std::size_t size,
                   std::pair<int, int> k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amplitude(0.3, 0.5);
  std::uniform_real_distribution<double> gain(1.0, 3.0);
  std::uniform_real_distribution<double> level(0.4, 0.6);
  const double a = amplitude(rng);
  const double g = gain(rng);
  const double m = level(rng);
  std::normal_distribution<double> noise(0.0, 0.1);
  const double s = static_cast<double>(size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const double t =
          (k.first * static_cast<double>(j) + k.second * static_cast<double>(i)) / s;
      const double v = m + a * std::clamp(g * std::cos(2.0 * kPi * t), -1.0, 1.0);
      img[i * size + j] = std::clamp(v + noise(rng), 0.0, 1.0);
    }
  }
}

bool inside_polygon(double x, double y, const std::vector<std::pair<double, double>>& poly) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const auto [xi, yi] = poly[i];
    const auto [xj, yj] = poly[j];
    if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

void shape_image(std::span<double> img, std::size_t size, std::size_t vertices,
                 std::mt19937_64& rng) {
  const double s = static_cast<double>(size);
  std::uniform_real_distribution<double> radius(0.2 * s, 0.35 * s);
  std::uniform_real_distribution<double> rotation(0.0, 2.0 * kPi);
  const double r = radius(rng);
  std::uniform_real_distribution<double> centre(r, s - r);
  const double cx = centre(rng);
  const double cy = centre(rng);
  const double rot = rotation(rng);
  std::vector<std::pair<double, double>> poly;
  for (std::size_t v = 0; v < vertices; ++v) {
    const double a = rot + 2.0 * kPi * static_cast<double>(v) / static_cast<double>(vertices);
    poly.emplace_back(cx + r * std::cos(a), cy + r * std::sin(a));
  }
  std::normal_distribution<double> noise(0.0, 0.05);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const double v = inside_polygon(static_cast<double>(j) + 0.5,
                                      static_cast<double>(i) + 0.5, poly)
                           ? 0.8
                           : 0.2;
      img[i * size + j] = std::clamp(v + noise(rng), 0.0, 1.0);
    }
  }
}

}  // namespace

Dataset make_synthetic(Generator generator, std::size_t size,
                       std::size_t classes, std::size_t image_size,
                       std::uint64_t seed) {
  if (classes < 2) throw ConfigError("synthetic data needs >= 2 classes");
  if (image_size < 4) throw ConfigError("synthetic images must be >= 4 px");
  Dataset data;
  data.classes = classes;
  data.images = Tensor({size, 1, image_size, image_size});
  data.labels.resize(size);
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::pair<int, int>>> freqs;
  if (generator == Generator::kStripes) {
    for (std::size_t c = 0; c < classes; ++c) {
      freqs.push_back(class_frequencies(image_size, classes, c));
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    const int label = static_cast<int>(i % classes);
    data.labels[i] = label;
    auto img = data.images.plane(i, 0);
    if (generator == Generator::kStripes) {
      const auto& options = freqs[static_cast<std::size_t>(label)];
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      stripes_image(img, image_size, options[pick(rng)], rng);
    } else {
      shape_image(img, image_size, 3 + static_cast<std::size_t>(label), rng);
    }
  }
  return data;
}

}  // namespace aanet
