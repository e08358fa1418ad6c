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

#include "mpt/model/config.hpp"

#include <array>
#include <string>

#include "mpt/error.hpp"

namespace mpt::model {

namespace {

constexpr std::array<std::pair<Variant, std::string_view>, 7> kVariantNames{{
    {Variant::HeadOnly, "head-only"},
    {Variant::FullFinetune, "full-finetune"},
    {Variant::PromptOnly, "prompt-only"},
    {Variant::AdapterOnly, "adapter-only"},
    {Variant::VptRandomPrompts, "vpt-random-prompts"},
    {Variant::PrimitiveAdapter, "primitive-adapter"},
    {Variant::FullMpt, "full-mpt"},
}};

}  // namespace

std::string_view variant_name(Variant v) {
  for (const auto& [variant, name] : kVariantNames) {
    if (variant == v) return name;
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  for (const auto& [variant, n] : kVariantNames) {
    if (n == name) return variant;
  }
  throw ConfigError("unknown variant '" + std::string(name) + "'");
}

const std::vector<Variant>& all_variants() {
  static const std::vector<Variant> all = [] {
    std::vector<Variant> v;
    for (const auto& entry : kVariantNames) v.push_back(entry.first);
    return v;
  }();
  return all;
}

std::string_view adapter_mode_name(AdapterMode m) {
  return m == AdapterMode::MeanBroadcast ? "mean-broadcast" : "per-token";
}

AdapterMode parse_adapter_mode(std::string_view name) {
  if (name == "mean-broadcast") return AdapterMode::MeanBroadcast;
  if (name == "per-token") return AdapterMode::PerToken;
  throw ConfigError("unknown adapter_mode '" + std::string(name) + "'");
}

void ModelConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("model config: " + what);
  };
  require(channels == 1 || channels == 3, "channels must be 1 or 3");
  require(patch > 0 && height > 0 && width > 0, "image and patch sizes must be positive");
  require(height % patch == 0 && width % patch == 0, "image size must be divisible by the patch size");
  require(dim > 0 && layers > 0 && heads > 0 && mlp_ratio > 0, "dim, layers, heads and mlp_ratio must be positive");
  require(dim % heads == 0, "dim must be divisible by heads");
  require(reduction > 0 && dim % reduction == 0, "dim must be divisible by the reduction factor");
  require(prompts > 0, "prompts must be positive");
  require(frames >= 2, "frames must be at least 2");
  require(classes >= 2, "classes must be at least 2");
  require(init_std > 0, "init_std must be positive");
}

ModelConfig ModelConfig::vit_base() {
  ModelConfig c;
  c.height = c.width = 224;
  c.patch = 16;
  c.dim = 768;
  c.layers = 12;
  c.heads = 12;
  return c;
}

}  // namespace mpt::model
