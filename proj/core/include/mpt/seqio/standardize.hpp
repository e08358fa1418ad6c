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

#include "mpt/seqio/sequence.hpp"

namespace mpt::seqio {

inline constexpr std::size_t kStandardLength = 16;

/// Resamples a clip to exactly `target` frames. Longer clips are subsampled
/// at uniformly spaced indices that include the first and last frame; shorter
/// clips are linearly interpolated per pixel. The frame rate is scaled so the
/// clip keeps its duration.
Sequence standardize_length(const Sequence& s, std::size_t target = kStandardLength);

}  // namespace mpt::seqio
