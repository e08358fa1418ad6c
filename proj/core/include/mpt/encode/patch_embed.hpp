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

#include "mpt/diff/tensor.hpp"
#include "mpt/encode/rank_pool.hpp"

namespace mpt::encode {

/// Frozen ViT embedding: linear patch projection, positional table and class token.
struct PatchEmbedParams {
  std::size_t patch = 8;
  diff::Tensor projection;  // (P*P*C) x D
  diff::Tensor bias;        // 1 x D
  diff::Tensor positions;   // N_v x D
  diff::Tensor cls;         // 1 x D
};

/// Non-overlapping P x P patches in raster order, each flattened as
/// (dy, dx, c). Returns an N_v x (P*P*C) constant.
diff::Tensor extract_patches(const DynamicImage& img, std::size_t patch);

struct EmbeddedImage {
  diff::Tensor cls;     // 1 x D
  diff::Tensor vision;  // N_v x D
};

EmbeddedImage patch_embed(const diff::Tensor& patches, const PatchEmbedParams& params);
EmbeddedImage patch_embed(const DynamicImage& img, const PatchEmbedParams& params);

}  // namespace mpt::encode
