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

#include <vector>

#include "mpt/seqio/sequence.hpp"

namespace mpt::encode {

/// H x W x C image in [0, 1], channels last.
struct DynamicImage {
  std::size_t height = 0, width = 0, channels = 0;
  std::vector<double> pixels;

  double at(std::size_t y, std::size_t x, std::size_t c) const { return pixels[(y * width + x) * channels + c]; }
};

/// alpha_t = 2t - T - 1 for t = 1..T.
std::vector<double> rank_pool_coefficients(std::size_t frames);

/// Approximate rank pooling with identity features: sum_t alpha_t I_t.
///
/// Terms are accumulated in mirrored pairs, alpha_t (I_t - I_{T+1-t}), so a
/// reversed clip yields exactly the negated image and a constant clip yields
/// exactly zero.
std::vector<double> rank_pool_raw(const seqio::Sequence& s);

/// rank_pool_raw min-max normalised per channel to [0, 1]; a channel with
/// zero range maps to 0.5.
DynamicImage rank_pool(const seqio::Sequence& s);

}  // namespace mpt::encode
