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

#include "mpt/model/config.hpp"

namespace mpt::harness {

/// Forward-pass cost of one sample in FLOPs, one multiply-add counted as two.
struct FlopBreakdown {
  std::uint64_t embedding = 0;  // patch projection
  std::uint64_t prompts = 0;    // 3x3 conv over the motion sequence + Gaussian tokenisation
  std::uint64_t attention = 0;  // QKV, scores, weighted values, output projection
  std::uint64_t ffn = 0;
  std::uint64_t adapters = 0;
  std::uint64_t head = 0;

  std::uint64_t total() const { return embedding + prompts + attention + ffn + adapters + head; }
  bool operator==(const FlopBreakdown&) const = default;
};

/// Token count entering the transformer for a variant.
std::uint64_t token_count(const model::ModelConfig& config, model::Variant variant);

FlopBreakdown estimate_flops(const model::ModelConfig& config, model::Variant variant = model::Variant::FullMpt);

}  // namespace mpt::harness
