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

#include "aanet/activation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "aanet/error.hpp"

namespace aanet {

namespace {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

double activate(Activation act, double x) {
  switch (act) {
    case Activation::kRelu:
      return x > 0.0 ? x : 0.0;
    case Activation::kSwish:
      return x * sigmoid(x);
    case Activation::kGelu:
      return x * normal_cdf(x);
  }
  return x;
}

double activate_derivative(Activation act, double x) {
  switch (act) {
    case Activation::kRelu:
      return x > 0.0 ? 1.0 : 0.0;
    case Activation::kSwish: {
      const double s = sigmoid(x);
      return s + x * s * (1.0 - s);
    }
    case Activation::kGelu:
      return normal_cdf(x) + x * normal_pdf(x);
  }
  return 1.0;
}

std::string_view to_string(Activation act) {
  switch (act) {
    case Activation::kRelu:
      return "relu";
    case Activation::kSwish:
      return "swish";
    case Activation::kGelu:
      return "gelu";
  }
  return "relu";
}

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "swish") return Activation::kSwish;
  if (name == "gelu") return Activation::kGelu;
  throw ArgumentError("unknown activation '" + std::string(name) + "'");
}

}  // namespace aanet
