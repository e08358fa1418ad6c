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

#include <cstddef>
#include <string>
#include <vector>

namespace mpt::seqio {

/// A T x H x W x C clip of pixel intensities in [0, 1], stored t-major,
/// row-major, channels last.
struct Sequence {
  std::size_t frames = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;
  double fps = 0.0;
  std::string id;
  std::string subject;
  std::size_t label = 0;
  std::vector<double> data;

  static Sequence zeros(std::size_t frames, std::size_t height, std::size_t width, std::size_t channels, double fps);

  std::size_t frame_size() const { return height * width * channels; }
  std::size_t index(std::size_t t, std::size_t y, std::size_t x, std::size_t c) const {
    return ((t * height + y) * width + x) * channels + c;
  }
  double& at(std::size_t t, std::size_t y, std::size_t x, std::size_t c) { return data[index(t, y, x, c)]; }
  double at(std::size_t t, std::size_t y, std::size_t x, std::size_t c) const { return data[index(t, y, x, c)]; }

  /// Throws DataError unless T >= 2, C in {1, 3}, fps > 0, the payload size
  /// matches and every value lies in [0, 1].
  void validate() const;
};

/// Same clip played backwards.
Sequence reversed(const Sequence& s);

}  // namespace mpt::seqio
