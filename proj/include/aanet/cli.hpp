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

#ifndef AANET_CLI_HPP_
#define AANET_CLI_HPP_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "aanet/config.hpp"
#include "aanet/data.hpp"

namespace aanet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

// Runs one command line (without the program name). Results go to `out`,
// the resolved configuration and diagnostics to `err`. Never throws; errors
// map to the exit codes above.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Train and test splits described by the data section. Synthetic images are
// generated at arch.input_size.
std::pair<Dataset, Dataset> load_datasets(const ExperimentConfig& config);

}  // namespace aanet

#endif  // AANET_CLI_HPP_
