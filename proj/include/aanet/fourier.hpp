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

#ifndef AANET_FOURIER_HPP_
#define AANET_FOURIER_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace aanet {

using Complex = std::complex<double>;

// 2-D spectrum in standard DFT ordering: values[k * width + l] holds the bin
// for vertical frequency k and horizontal frequency l.
struct Spectrum {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<Complex> values;

  Complex at(std::size_t k, std::size_t l) const { return values[k * width + l]; }
  double energy() const;
};

// Unnormalized forward DFT, X[k] = sum_n x[n] exp(-2 pi i k n / N).
// Radix-2 for power-of-two lengths, direct summation otherwise.
std::vector<Complex> dft(std::span<const Complex> signal);
std::vector<Complex> dft(std::span<const double> signal);
// Inverse with the 1/N factor.
std::vector<Complex> idft(std::span<const Complex> spectrum);

// plane is row-major height×width.
Spectrum dft2(std::span<const double> plane, std::size_t height,
              std::size_t width);
// Real part of the inverse transform; the imaginary residue is discarded.
std::vector<double> idft2(const Spectrum& spectrum);

}  // namespace aanet

#endif  // AANET_FOURIER_HPP_
