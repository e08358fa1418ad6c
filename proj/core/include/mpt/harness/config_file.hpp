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

#include <cstdint>
#include <filesystem>
#include <string>

#include "mpt/magnify/butterworth.hpp"
#include "mpt/model/config.hpp"

namespace mpt::harness {

struct TrainConfig {
  double lr = 3e-4;
  std::size_t batch = 16;
  std::size_t epochs = 30;
  std::uint64_t seed = 1;
  double beta = 20.0;
  magnify::BandpassSpec band;  // fps is taken from each sequence
  std::size_t levels = 3;
  model::Variant variant = model::Variant::FullMpt;
  model::ModelConfig model;
  std::string weights;  // optional backbone weights file

  /// Throws ConfigError.
  void validate() const;
};

/// Flat `key = value` lines; `#` starts a comment, values may be quoted.
/// Every key overrides the corresponding field of `base`; unknown keys and
/// unparsable values are ConfigError.
TrainConfig parse_config(const std::string& text, TrainConfig base = {});
TrainConfig load_config(const std::filesystem::path& path, TrainConfig base = {});
/// Inverse of parse_config; lists every key.
std::string format_config(const TrainConfig& config);

}  // namespace mpt::harness
