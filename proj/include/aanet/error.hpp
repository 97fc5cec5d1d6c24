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

#ifndef AANET_ERROR_HPP_
#define AANET_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace aanet {

// Base of every error raised by the library. The CLI maps the subclasses
// onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor shapes that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A scalar argument outside its valid domain (stride < 1, even kernel, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Invalid architecture, placement or experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (IDX files, tables, checkpoints).
class DataError : public Error {
 public:
  using Error::Error;
};

// NaN or Inf detected where finite values are required.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace aanet

#endif  // AANET_ERROR_HPP_
