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

#include "mpt/encode/rank_pool.hpp"

#include <algorithm>

namespace mpt::encode {

std::vector<double> rank_pool_coefficients(std::size_t frames) {
  std::vector<double> alpha(frames);
  for (std::size_t t = 1; t <= frames; ++t) {
    alpha[t - 1] = 2.0 * static_cast<double>(t) - static_cast<double>(frames) - 1.0;
  }
  return alpha;
}

std::vector<double> rank_pool_raw(const seqio::Sequence& s) {
  s.validate();
  const std::size_t T = s.frames;
  const std::size_t fs = s.frame_size();
  const auto alpha = rank_pool_coefficients(T);
  std::vector<double> out(fs, 0.0);
  for (std::size_t i = 0; i < T / 2; ++i) {
    const double* early = s.data.data() + i * fs;
    const double* late = s.data.data() + (T - 1 - i) * fs;
    for (std::size_t p = 0; p < fs; ++p) out[p] += alpha[i] * (early[p] - late[p]);
  }
  return out;
}

DynamicImage rank_pool(const seqio::Sequence& s) {
  auto raw = rank_pool_raw(s);
  DynamicImage img{s.height, s.width, s.channels, std::move(raw)};
  const std::size_t C = s.channels;
  for (std::size_t c = 0; c < C; ++c) {
    double lo = img.pixels[c], hi = img.pixels[c];
    for (std::size_t p = c; p < img.pixels.size(); p += C) {
      lo = std::min(lo, img.pixels[p]);
      hi = std::max(hi, img.pixels[p]);
    }
    const double range = hi - lo;
    for (std::size_t p = c; p < img.pixels.size(); p += C) {
      img.pixels[p] = range > 0.0 ? (img.pixels[p] - lo) / range : 0.5;
    }
  }
  return img;
}

}  // namespace mpt::encode
