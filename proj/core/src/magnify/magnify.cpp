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

#include "mpt/magnify/magnify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpt/error.hpp"
#include "mpt/magnify/pyramid.hpp"

namespace mpt::magnify {

MotionField extract_motion(const seqio::Sequence& s, double beta, const BandpassSpec& band, std::size_t levels) {
  s.validate();
  if (levels < 1) throw ConfigError("magnify: at least one pyramid level is required");
  if (!std::isfinite(beta)) throw ConfigError("magnify: beta must be finite");
  if (std::abs(band.fps - s.fps) > 1e-6 * s.fps) {
    throw ConfigError("magnify: band-pass designed for " + std::to_string(band.fps) + " fps but sequence '" + s.id +
                      "' runs at " + std::to_string(s.fps));
  }
  const std::size_t div = std::size_t{1} << levels;
  if (s.height % div != 0 || s.width % div != 0) {
    throw ShapeError("magnify: frame size is not divisible by 2^" + std::to_string(levels));
  }
  const ButterworthBandpass filter(band);
  const std::size_t T = s.frames, H = s.height, W = s.width, C = s.channels;

  MotionField out{T, H, W, C, std::vector<double>(s.data.size(), 0.0)};

  for (std::size_t c = 0; c < C; ++c) {
    std::vector<Pyramid> pyramids;
    pyramids.reserve(T);
    for (std::size_t t = 0; t < T; ++t) {
      Plane frame = Plane::zeros(H, W);
      for (std::size_t y = 0; y < H; ++y)
        for (std::size_t x = 0; x < W; ++x) frame.at(y, x) = s.at(t, y, x, c);
      pyramids.push_back(laplacian_decompose(frame, levels));
    }

    for (std::size_t k = 0; k < levels; ++k) {
      const std::size_t npix = pyramids[0].bands[k].pixels.size();
      std::vector<double> series(npix * T);
      for (std::size_t t = 0; t < T; ++t) {
        const auto& px = pyramids[t].bands[k].pixels;
        for (std::size_t p = 0; p < npix; ++p) series[p * T + t] = px[p];
      }
      temporal_bandpass_batch(series, npix, T, filter);
      for (std::size_t t = 0; t < T; ++t) {
        auto& px = pyramids[t].bands[k].pixels;
        for (std::size_t p = 0; p < npix; ++p) px[p] = beta * series[p * T + t];
      }
    }

    for (std::size_t t = 0; t < T; ++t) {
      auto& residual = pyramids[t].residual.pixels;
      std::fill(residual.begin(), residual.end(), 0.0);
      const Plane rec = laplacian_reconstruct(pyramids[t]);
      for (std::size_t y = 0; y < H; ++y)
        for (std::size_t x = 0; x < W; ++x) out.values[s.index(t, y, x, c)] = rec.at(y, x);
    }
  }
  return out;
}

seqio::Sequence to_storage(const MotionField& motion, const seqio::Sequence& like) {
  seqio::Sequence out = like;
  out.frames = motion.frames;
  out.height = motion.height;
  out.width = motion.width;
  out.channels = motion.channels;
  out.data.resize(motion.values.size());
  for (std::size_t i = 0; i < motion.values.size(); ++i) {
    out.data[i] = 0.5 * (std::clamp(motion.values[i], -1.0, 1.0) + 1.0);
  }
  return out;
}

seqio::Sequence magnify_sequence(const seqio::Sequence& s, double beta, const BandpassSpec& band, std::size_t levels) {
  return to_storage(extract_motion(s, beta, band, levels), s);
}

}  // namespace mpt::magnify
