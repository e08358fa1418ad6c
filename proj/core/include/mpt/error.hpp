/*
 * Copyright 2026 The MPT Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace mpt {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor or array dimensions that do not fit an operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration values, unknown keys, bad CLI arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Bad or inconsistent input data (manifests, sequences, labels).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Binary container could not be parsed. The kind distinguishes the cause.
class FormatError : public DataError {
 public:
  enum class Kind { BadMagic, Truncated, DimensionOverflow, ShapeMismatch, Io };

  FormatError(Kind kind, const std::string& what) : DataError(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// NaN or Inf produced where finite values are required.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpt
