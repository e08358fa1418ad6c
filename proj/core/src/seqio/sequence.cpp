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

#include "mpt/seqio/sequence.hpp"

#include <algorithm>
#include <string>

#include "mpt/error.hpp"

namespace mpt::seqio {

Sequence Sequence::zeros(std::size_t frames, std::size_t height, std::size_t width, std::size_t channels,
                         double fps) {
  Sequence s;
  s.frames = frames;
  s.height = height;
  s.width = width;
  s.channels = channels;
  s.fps = fps;
  s.data.assign(frames * height * width * channels, 0.0);
  return s;
}

void Sequence::validate() const {
  if (frames < 2) throw DataError("sequence '" + id + "' has fewer than 2 frames");
  if (channels != 1 && channels != 3) throw DataError("sequence '" + id + "' must have 1 or 3 channels");
  if (height == 0 || width == 0) throw DataError("sequence '" + id + "' has an empty frame");
  if (!(fps > 0.0)) throw DataError("sequence '" + id + "' has non-positive fps");
  if (data.size() != frames * frame_size()) throw DataError("sequence '" + id + "' payload size mismatch");
  for (double v : data) {
    if (!(v >= 0.0 && v <= 1.0)) throw DataError("sequence '" + id + "' has a pixel outside [0, 1]");
  }
}

Sequence reversed(const Sequence& s) {
  Sequence r = s;
  const std::size_t fs = s.frame_size();
  for (std::size_t t = 0; t < s.frames; ++t) {
    std::copy_n(s.data.begin() + (s.frames - 1 - t) * fs, fs, r.data.begin() + t * fs);
  }
  return r;
}

}  // namespace mpt::seqio
