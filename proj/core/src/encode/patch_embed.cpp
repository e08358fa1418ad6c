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

#include "mpt/encode/patch_embed.hpp"

#include <string>

#include "mpt/diff/ops.hpp"
#include "mpt/error.hpp"

namespace mpt::encode {

using diff::Tensor;

Tensor extract_patches(const DynamicImage& img, std::size_t patch) {
  if (patch == 0 || img.height % patch != 0 || img.width % patch != 0) {
    throw ShapeError("patch_embed: " + std::to_string(img.height) + "x" + std::to_string(img.width) +
                     " image is not divisible into " + std::to_string(patch) + "-pixel patches");
  }
  const std::size_t gh = img.height / patch, gw = img.width / patch, C = img.channels;
  const std::size_t dim = patch * patch * C;
  std::vector<double> rows;
  rows.reserve(gh * gw * dim);
  for (std::size_t py = 0; py < gh; ++py)
    for (std::size_t px = 0; px < gw; ++px)
      for (std::size_t dy = 0; dy < patch; ++dy)
        for (std::size_t dx = 0; dx < patch; ++dx)
          for (std::size_t c = 0; c < C; ++c) rows.push_back(img.at(py * patch + dy, px * patch + dx, c));
  return Tensor::from({gh * gw, dim}, std::move(rows));
}

EmbeddedImage patch_embed(const Tensor& patches, const PatchEmbedParams& params) {
  if (patches.rows() != params.positions.rows()) {
    throw ShapeError("patch_embed: " + std::to_string(patches.rows()) + " patches but " +
                     std::to_string(params.positions.rows()) + " positions");
  }
  Tensor vision = diff::add(diff::add_row(diff::matmul(patches, params.projection), params.bias), params.positions);
  return {params.cls, std::move(vision)};
}

EmbeddedImage patch_embed(const DynamicImage& img, const PatchEmbedParams& params) {
  return patch_embed(extract_patches(img, params.patch), params);
}

}  // namespace mpt::encode
