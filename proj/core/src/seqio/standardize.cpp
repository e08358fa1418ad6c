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

#include "mpt/seqio/standardize.hpp"

#include <algorithm>

#include "mpt/error.hpp"

namespace mpt::seqio {

Sequence standardize_length(const Sequence& s, std::size_t target) {
  if (target < 2) throw ConfigError("standardize_length: target must be at least 2");
  if (s.frames < 2) throw DataError("standardize_length: sequence '" + s.id + "' has fewer than 2 frames");
  if (s.frames == target) return s;

  Sequence out = s;
  out.frames = target;
  out.fps = s.fps * static_cast<double>(target - 1) / static_cast<double>(s.frames - 1);
  const std::size_t fs = s.frame_size();
  out.data.assign(target * fs, 0.0);
  const std::size_t span = s.frames - 1;
  const std::size_t steps = target - 1;

  if (s.frames > target) {
    for (std::size_t i = 0; i < target; ++i) {
      // round(i * span / steps) in integers
      const std::size_t src = (2 * i * span + steps) / (2 * steps);
      std::copy_n(s.data.begin() + src * fs, fs, out.data.begin() + i * fs);
    }
    return out;
  }

  for (std::size_t i = 0; i < target; ++i) {
    const double u = static_cast<double>(i * span) / static_cast<double>(steps);
    const std::size_t k = std::min(static_cast<std::size_t>(u), span);
    const double w = u - static_cast<double>(k);
    const double* a = s.data.data() + k * fs;
    const double* b = s.data.data() + std::min(k + 1, span) * fs;
    double* o = out.data.data() + i * fs;
    for (std::size_t p = 0; p < fs; ++p) o[p] = a[p] + w * (b[p] - a[p]);
  }
  return out;
}

}  // namespace mpt::seqio
