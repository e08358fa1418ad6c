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
#include "mpt/seqio/sequence.hpp"

namespace mpt::encode {

inline constexpr double kVarianceFloor = 1e-4;

/// Trainable motion prompt generator.
struct PromptGenParams {
  diff::Tensor conv_weight;   // (3*3*C) x D, rows ordered (dy, dx, c)
  diff::Tensor conv_bias;     // 1 x D
  diff::Tensor mean_weight;   // N_p x T, temporal mixing for the means
  diff::Tensor var_weight;    // N_p x T, temporal mixing for the variances
  diff::Tensor token_scale;   // 1 x D

  std::size_t prompts() const { return mean_weight.rows(); }
  std::size_t frames() const { return mean_weight.cols(); }
};

/// Per-frame spatial means of the nine reflect-padded 3x3 shifts of every
/// channel: a T x (9*C) constant. A 3x3 convolution followed by global average
/// pooling is linear, so it equals taps * conv_weight + conv_bias.
diff::Tensor motion_tap_means(const seqio::Sequence& motion);

/// Conv 3x3 (stride 1, reflect pad) to D channels, then spatial average: T x D.
diff::Tensor embed_motion(const diff::Tensor& tap_means, const PromptGenParams& params);
diff::Tensor embed_motion(const seqio::Sequence& motion, const PromptGenParams& params);

/// Temporal Gaussian tokenisation of S' (T x D) into N_p x D prompts.
///
/// For prompt i: mu_i = W^mu_i S', var_i = softplus(W^var_i S') + 1e-4, the
/// normal density of every S'[t, d] under (mu_i[d], var_i[d]) is averaged over
/// t, then scaled elementwise by the token scale.
diff::Tensor gaussian_tokenize(const diff::Tensor& embedded, const PromptGenParams& params);

}  // namespace mpt::encode
