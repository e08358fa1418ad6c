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
#include <vector>

#include "mpt/magnify/butterworth.hpp"
#include "mpt/seqio/sequence.hpp"

namespace mpt::magnify {

inline constexpr double kDefaultBeta = 20.0;
inline constexpr std::size_t kDefaultLevels = 3;

/// Motion signal before clamping, same layout as the source Sequence.
struct MotionField {
  std::size_t frames = 0, height = 0, width = 0, channels = 0;
  std::vector<double> values;
};

/// Eulerian motion extraction. Each frame and channel is decomposed into
/// `levels` Laplacian bands, every band pixel is band-passed over time and
/// scaled by `beta`, and frames are rebuilt from the amplified bands alone;
/// the low-pass residual does not contribute. `band.fps` must equal the
/// sequence frame rate.
MotionField extract_motion(const seqio::Sequence& s, double beta, const BandpassSpec& band,
                           std::size_t levels = kDefaultLevels);

/// extract_motion clamped to [-1, 1] and mapped affinely to [0, 1]; zero
/// motion reads as 0.5. Metadata (id, subject, label, fps) is preserved.
seqio::Sequence magnify_sequence(const seqio::Sequence& s, double beta, const BandpassSpec& band,
                                 std::size_t levels = kDefaultLevels);

/// Maps a motion field into storage range.
seqio::Sequence to_storage(const MotionField& motion, const seqio::Sequence& like);

}  // namespace mpt::magnify
