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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mpt::model {

enum class AdapterMode { MeanBroadcast, PerToken };

enum class Variant {
  HeadOnly,
  FullFinetune,
  PromptOnly,
  AdapterOnly,
  VptRandomPrompts,
  PrimitiveAdapter,
  FullMpt,
};

/// Ablation arm names as used on the command line, e.g. "full-mpt".
std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);
const std::vector<Variant>& all_variants();

std::string_view adapter_mode_name(AdapterMode m);
AdapterMode parse_adapter_mode(std::string_view name);

struct ModelConfig {
  std::size_t height = 64;
  std::size_t width = 64;
  std::size_t channels = 3;
  std::size_t patch = 8;
  std::size_t dim = 64;
  std::size_t layers = 4;
  std::size_t heads = 4;
  std::size_t mlp_ratio = 4;
  std::size_t prompts = 5;
  std::size_t frames = 16;
  std::size_t reduction = 8;
  std::size_t classes = 3;
  AdapterMode adapter_mode = AdapterMode::MeanBroadcast;
  double init_std = 0.02;

  std::size_t vision_tokens() const { return (height / patch) * (width / patch); }
  std::size_t patch_dim() const { return patch * patch * channels; }
  std::size_t bottleneck() const { return dim / reduction; }
  std::size_t head_dim() const { return dim / heads; }

  /// Throws ConfigError on an inconsistent configuration.
  void validate() const;

  /// ViT-B/16 at 224 x 224.
  static ModelConfig vit_base();
};

}  // namespace mpt::model
