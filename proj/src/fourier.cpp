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

#include "aanet/fourier.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "aanet/error.hpp"

namespace aanet {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// exp(sign * 2 pi i m / n) with m reduced modulo n first.
Complex twiddle(std::size_t m, std::size_t n, double sign) {
  const double angle =
      sign * 2.0 * std::numbers::pi * static_cast<double>(m % n) /
      static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<Complex> transform(std::span<const Complex> x, double sign) {
  const std::size_t n = x.size();
  if (n == 0) throw DimensionError("DFT of an empty signal");
  if (!is_power_of_two(n)) {
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      Complex acc{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) acc += x[j] * twiddle(k * j, n, sign);
      out[k] = acc;
    }
    return out;
  }
  // Iterative Cooley-Tukey.
  std::vector<Complex> a(x.begin(), x.end());
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex w = twiddle(k, len, sign);
        const Complex u = a[start + k];
        const Complex v = a[start + k + half] * w;
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
  return a;
}

}  // namespace

double Spectrum::energy() const {
  double e = 0.0;
  for (const Complex& v : values) e += std::norm(v);
  return e;
}

std::vector<Complex> dft(std::span<const Complex> signal) {
  return transform(signal, -1.0);
}

std::vector<Complex> dft(std::span<const double> signal) {
  std::vector<Complex> x(signal.begin(), signal.end());
  return transform(x, -1.0);
}

std::vector<Complex> idft(std::span<const Complex> spectrum) {
  std::vector<Complex> out = transform(spectrum, 1.0);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (Complex& v : out) v *= scale;
  return out;
}

namespace {

// Applies a 1-D transform along rows, then columns.
void transform_2d(std::vector<Complex>& values, std::size_t height,
                  std::size_t width, double sign) {
  std::vector<Complex> line;
  for (std::size_t r = 0; r < height; ++r) {
    line.assign(values.begin() + static_cast<std::ptrdiff_t>(r * width),
                values.begin() + static_cast<std::ptrdiff_t>((r + 1) * width));
    const auto t = transform(line, sign);
    std::copy(t.begin(), t.end(),
              values.begin() + static_cast<std::ptrdiff_t>(r * width));
  }
  line.resize(height);
  for (std::size_t c = 0; c < width; ++c) {
    for (std::size_t r = 0; r < height; ++r) line[r] = values[r * width + c];
    const auto t = transform(line, sign);
    for (std::size_t r = 0; r < height; ++r) values[r * width + c] = t[r];
  }
}

}  // namespace

Spectrum dft2(std::span<const double> plane, std::size_t height,
              std::size_t width) {
  if (height == 0 || width == 0) {
    throw DimensionError("dft2 requires a non-empty plane");
  }
  if (plane.size() != height * width) {
    throw DimensionError("plane holds " + std::to_string(plane.size()) +
                         " values, expected " +
                         std::to_string(height * width));
  }
  Spectrum s{height, width, std::vector<Complex>(plane.begin(), plane.end())};
  transform_2d(s.values, height, width, -1.0);
  return s;
}

std::vector<double> idft2(const Spectrum& spectrum) {
  std::vector<Complex> values = spectrum.values;
  if (values.size() != spectrum.height * spectrum.width || values.empty()) {
    throw DimensionError("spectrum size does not match its shape");
  }
  transform_2d(values, spectrum.height, spectrum.width, 1.0);
  const double scale =
      1.0 / static_cast<double>(spectrum.height * spectrum.width);
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real() * scale;
  return out;
}

}  // namespace aanet
