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

#include "mpt/encode/motion_prompt.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mpt/diff/ops.hpp"
#include "mpt/error.hpp"

namespace mpt::encode {

using diff::Tensor;

namespace {

std::size_t reflect(long i, std::size_t n) {
  if (n == 1) return 0;
  if (i < 0) return static_cast<std::size_t>(-i);
  if (i >= static_cast<long>(n)) return 2 * (n - 1) - static_cast<std::size_t>(i);
  return static_cast<std::size_t>(i);
}

}  // namespace

Tensor motion_tap_means(const seqio::Sequence& motion) {
  const std::size_t T = motion.frames, H = motion.height, W = motion.width, C = motion.channels;
  if (T == 0 || H < 2 || W < 2) throw ShapeError("motion_tap_means: frames must be at least 2x2");
  const double inv = 1.0 / static_cast<double>(H * W);
  std::vector<double> taps(T * 9 * C, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    double* row = taps.data() + t * 9 * C;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        double* tap = row + static_cast<std::size_t>((dy + 1) * 3 + (dx + 1)) * C;
        for (std::size_t y = 0; y < H; ++y) {
          const std::size_t sy = reflect(static_cast<long>(y) + dy, H);
          for (std::size_t x = 0; x < W; ++x) {
            const std::size_t sx = reflect(static_cast<long>(x) + dx, W);
            for (std::size_t c = 0; c < C; ++c) tap[c] += motion.at(t, sy, sx, c);
          }
        }
        for (std::size_t c = 0; c < C; ++c) tap[c] *= inv;
      }
    }
  }
  return Tensor::from({T, 9 * C}, std::move(taps));
}

Tensor embed_motion(const Tensor& tap_means, const PromptGenParams& params) {
  if (tap_means.cols() != params.conv_weight.rows()) {
    throw ShapeError("embed_motion: tap features have " + std::to_string(tap_means.cols()) +
                     " columns, kernel expects " + std::to_string(params.conv_weight.rows()));
  }
  if (tap_means.rows() != params.frames()) {
    throw ShapeError("embed_motion: motion has " + std::to_string(tap_means.rows()) + " frames, expected " +
                     std::to_string(params.frames()));
  }
  return diff::add_row(diff::matmul(tap_means, params.conv_weight), params.conv_bias);
}

Tensor embed_motion(const seqio::Sequence& motion, const PromptGenParams& params) {
  return embed_motion(motion_tap_means(motion), params);
}

Tensor gaussian_tokenize(const Tensor& embedded, const PromptGenParams& params) {
  const std::size_t T = embedded.rows();
  if (T != params.frames()) throw ShapeError("gaussian_tokenize: frame count mismatch");
  if (embedded.cols() != params.token_scale.cols()) throw ShapeError("gaussian_tokenize: width mismatch");

  const Tensor means = diff::matmul(params.mean_weight, embedded);
  const Tensor vars = diff::add_scalar(diff::softplus(diff::matmul(params.var_weight, embedded)), kVarianceFloor);

  std::vector<Tensor> prompts;
  prompts.reserve(params.prompts());
  for (std::size_t i = 0; i < params.prompts(); ++i) {
    const Tensor mu = diff::slice_rows(means, i, i + 1);
    const Tensor var = diff::slice_rows(vars, i, i + 1);
    const Tensor centred = diff::sub(embedded, diff::broadcast_rows(mu, T));
    const Tensor z = diff::div(diff::square(centred), diff::broadcast_rows(var, T));
    const Tensor norm = diff::sqrt(diff::scale(var, 2.0 * std::numbers::pi));
    const Tensor density = diff::div(diff::exp(diff::scale(z, -0.5)), diff::broadcast_rows(norm, T));
    prompts.push_back(diff::mul(diff::mean_rows(density), params.token_scale));
  }
  return diff::concat_rows(prompts);
}

}  // namespace mpt::encode
