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

#ifndef AANET_ACTIVATION_HPP_
#define AANET_ACTIVATION_HPP_

#include <string_view>

namespace aanet {

// swish(x) = x * sigmoid(x) with a fixed beta of 1; gelu uses the exact
// erf-based normal CDF.
enum class Activation { kRelu, kSwish, kGelu };

double activate(Activation act, double x);
double activate_derivative(Activation act, double x);

std::string_view to_string(Activation act);
// Throws ArgumentError for unknown names.
Activation parse_activation(std::string_view name);

}  // namespace aanet

#endif  // AANET_ACTIVATION_HPP_
