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

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mpt/diff/tensor.hpp"
#include "mpt/encode/motion_prompt.hpp"
#include "mpt/encode/patch_embed.hpp"
#include "mpt/model/config.hpp"

namespace mpt::model {

struct LayerParams {
  diff::Tensor norm1_gain, norm1_bias;  // 1 x D
  diff::Tensor qkv_weight;              // D x 3D, columns [q | k | v]
  diff::Tensor qkv_bias;                // 1 x 3D
  diff::Tensor out_weight, out_bias;    // D x D, 1 x D
  diff::Tensor norm2_gain, norm2_bias;
  diff::Tensor fc1_weight, fc1_bias;    // D x rD, 1 x rD
  diff::Tensor fc2_weight, fc2_bias;    // rD x D, 1 x D
};

struct BackboneParams {
  encode::PatchEmbedParams embed;
  std::vector<LayerParams> layers;
  diff::Tensor final_gain, final_bias;
};

/// x + f(x W_down) W_up with f = GELU.
struct AdapterBranch {
  diff::Tensor down;  // D x D/eta
  diff::Tensor up;    // D/eta x D
};

enum Group : std::size_t { kClassGroup = 0, kVisionGroup = 1, kPromptGroup = 2 };

/// One branch per token group and layer.
using GroupAdapterParams = std::vector<std::array<AdapterBranch, 3>>;
/// One branch per layer shared by all tokens.
using PrimitiveAdapterParams = std::vector<AdapterBranch>;

struct ModelParams {
  ModelConfig config;
  Variant variant = Variant::FullMpt;
  BackboneParams backbone;
  // Exactly one prompt source may be present.
  bool has_prompt_generator = false;
  encode::PromptGenParams prompt_generator;
  diff::Tensor free_prompts;  // N_p x D
  GroupAdapterParams group_adapters;
  PrimitiveAdapterParams primitive_adapters;
  diff::Tensor head_weight;  // D x K
  diff::Tensor head_bias;    // 1 x K

  bool has_prompts() const { return has_prompt_generator || static_cast<bool>(free_prompts); }
};

using NamedTensor = std::pair<std::string, diff::Tensor>;

/// Seeded frozen backbone: weights N(0, init_std), biases 0, norm gains 1.
BackboneParams init_backbone(const ModelConfig& config, std::uint64_t seed);

/// Independent copy of the values; requires_grad as given.
BackboneParams clone_backbone(const BackboneParams& backbone, bool requires_grad);

/// Builds the named ablation arm around `backbone`. The backbone is shared
/// unless the arm fine-tunes it, in which case it is copied. Trainable parts
/// are initialised from `seed`.
ModelParams make_variant(const ModelConfig& config, Variant variant, const BackboneParams& backbone,
                         std::uint64_t seed);

/// Every tensor of the model with a stable dotted name.
std::vector<NamedTensor> named_tensors(const ModelParams& params);
std::vector<NamedTensor> named_tensors(const BackboneParams& backbone);
std::vector<diff::Tensor> trainable_tensors(const ModelParams& params);
std::vector<diff::Tensor> frozen_tensors(const ModelParams& params);

std::size_t count_tunable(const ModelParams& params);

}  // namespace mpt::model
