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

#ifndef AANET_ROBUSTNESS_HPP_
#define AANET_ROBUSTNESS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "aanet/data.hpp"
#include "aanet/error.hpp"
#include "aanet/network.hpp"
#include "aanet/tensor.hpp"

namespace aanet {

enum class Corruption {
  kGaussianNoise,
  kShotNoise,
  kImpulseNoise,
  kDefocusBlur,
  kContrast,
  kBrightness,
  kPixelate,
};

std::string_view to_string(Corruption c);
// Throws ArgumentError for an unknown corruption id.
Corruption parse_corruption(std::string_view name);
std::span<const Corruption> all_corruptions();

inline constexpr int kSeverityLevels = 5;

// Level s in 1..5 and the corruption parameter used at that level: noise
// sigma, photon scale, impulse fraction, disk radius (px), contrast factor,
// brightness offset or pixelate factor.
struct Severity {
  int level = 1;
  double parameter = 0.0;
};

// The standard parameter for (c, level); throws ArgumentError for levels
// outside 1..5.
Severity severity(Corruption c, int level);

// Deterministic in (image, c, severity, seed); output clipped to [0, 1].
// Each sample of the batch is corrupted independently.
Tensor corrupt(const Tensor& image, Corruption c, const Severity& severity,
               std::uint64_t seed);

// Top-1 error fractions per corruption and severity 1..5.
struct ErrorTable {
  std::map<std::string, std::array<double, kSeverityLevels>> entries;
  double clean_error = 0.0;

  bool operator==(const ErrorTable&) const = default;
};

// Throws DataError when an error lies outside [0, 1].
void validate(const ErrorTable& table);

struct CorruptionReport {
  std::map<std::string, double> ce;
  double mce = 0.0;
  double clean_error = 0.0;

  bool operator==(const CorruptionReport&) const = default;
};

class DegenerateBaselineError : public DataError {
 public:
  using DataError::DataError;
};

// 100 * sum_s E_f[s, c] / sum_s E_baseline[s, c].
double corruption_error(const ErrorTable& f, const ErrorTable& baseline,
                        const std::string& corruption);
// Unweighted mean; throws ArgumentError on an empty set.
double mean_corruption_error(std::span<const double> ce_values);
// CE for every corruption of f, their mean and f's clean error.
CorruptionReport corruption_report(const ErrorTable& f,
                                   const ErrorTable& baseline);

void to_json(nlohmann::json& j, const ErrorTable& t);
void from_json(const nlohmann::json& j, ErrorTable& t);
void to_json(nlohmann::json& j, const CorruptionReport& r);
void from_json(const nlohmann::json& j, CorruptionReport& r);

// Header "corruption,severity,error"; the clean error is the row
// "clean,0,<error>".
std::string to_csv(const ErrorTable& table);
ErrorTable error_table_from_csv(std::string_view text);

// Top-1 error of the network on every (corruption, severity) cell of the
// test set. Cells run on up to `threads` workers; each cell draws its noise
// from a seed derived from (seed, corruption, level), so the table does not
// depend on evaluation order.
ErrorTable evaluate_corruptions(const LayerGraph& net, const Dataset& test,
                                std::span<const Corruption> corruptions,
                                std::uint64_t seed, std::size_t threads = 1);

std::uint64_t cell_seed(std::uint64_t seed, Corruption c, int level);

}  // namespace aanet

#endif  // AANET_ROBUSTNESS_HPP_
